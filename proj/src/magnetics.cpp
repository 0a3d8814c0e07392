#include "mtsim/magnetics.hpp"

#include <cmath>

#include "mtsim/errors.hpp"
#include "mtsim/textutil.hpp"

namespace mtsim {

void MagnetModel::validate() const {
    if (!(h_coercive_oe > 0.0)) throw ConfigError("magnet.h_coercive_oe must be positive");
    if (!(h_width_oe > 0.0)) throw ConfigError("magnet.h_width_oe must be positive");
    if (!(max_field_oe > h_coercive_oe))
        throw ConfigError("magnet.max_field_oe must exceed the coercive field");
}

MagnetizationState remanent_state(const MagnetModel& model, int sign) {
    if (sign != 1 && sign != -1) throw ConfigError("remanence sign must be +1 or -1");
    MagnetizationState state;  // virgin state at zero field
    state = set_h_field(state, sign * model.max_field_oe, model);
    return set_h_field(state, 0.0, model);
}

MagnetizationState set_h_field(const MagnetizationState& state, double h_new_oe,
                               const MagnetModel& model) {
    if (!std::isfinite(h_new_oe) || std::abs(h_new_oe) > model.max_field_oe)
        throw FieldRangeError("dc field " + format_double(h_new_oe) + " Oe outside +/-" +
                              format_double(model.max_field_oe) + " Oe");
    if (h_new_oe == state.h_dc_oe) return state;

    MagnetizationState next = state;
    next.branch = h_new_oe > state.h_dc_oe ? Branch::ascending : Branch::descending;
    const double s = next.branch == Branch::ascending ? 1.0 : -1.0;
    next.m = std::tanh((h_new_oe - s * model.h_coercive_oe) / model.h_width_oe);
    next.h_dc_oe = h_new_oe;
    return next;
}

void MEComposition::validate() const {
    if (!(alpha_max > 0.0)) throw ConfigError("coupling.alpha_max must be positive");
    if (orientation_sign != 1 && orientation_sign != -1)
        throw ConfigError("coupling.orientation_sign must be +1 or -1");
}

double alpha_e(double p, double m, const MEComposition& comp) {
    return comp.alpha_max * static_cast<double>(comp.orientation_sign) * p * m;
}

std::vector<SweepPoint> sweep_h_loop(MagnetizationState state, double h_min_oe, double h_max_oe,
                                     int n_steps, int periods, double p, const MagnetModel& model,
                                     const MEComposition& comp) {
    if (!(h_min_oe < h_max_oe)) throw ConfigError("sweep requires h_min < h_max");
    if (n_steps < 2) throw ConfigError("sweep requires n_steps >= 2");
    if (periods < 1) throw ConfigError("sweep requires periods >= 1");

    std::vector<SweepPoint> points;
    points.reserve(static_cast<std::size_t>(2 * n_steps * periods + 1));
    const auto record = [&](double h) {
        state = set_h_field(state, h, model);
        points.push_back({h, state.m, alpha_e(p, state.m, comp)});
    };

    const double step = (h_max_oe - h_min_oe) / n_steps;
    record(h_max_oe);
    for (int period = 0; period < periods; ++period) {
        for (int k = 1; k <= n_steps; ++k)
            record(k == n_steps ? h_min_oe : h_max_oe - k * step);
        for (int k = 1; k <= n_steps; ++k)
            record(k == n_steps ? h_max_oe : h_min_oe + k * step);
    }
    return points;
}

}  // namespace mtsim
