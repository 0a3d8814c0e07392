#include "mtsim/device.hpp"

#include <cmath>
#include <string>

#include "mtsim/errors.hpp"
#include "mtsim/textutil.hpp"

namespace mtsim {

void DeviceGeometry::validate() const {
    if (!(fe_thickness_m > 0.0) || !std::isfinite(fe_thickness_m))
        throw ConfigError("geometry.fe_thickness_m must be positive");
    if (!(electrode_thickness_m > 0.0))
        throw ConfigError("geometry.electrode_thickness_m must be positive");
    if (!(electrode_area_m2 > 0.0)) throw ConfigError("geometry.electrode_area_m2 must be positive");
    if (!(breakdown_limit_v > 0.0)) throw ConfigError("geometry.breakdown_limit_v must be positive");
}

double field_kv_per_cm(const DeviceGeometry& geom, double volts) {
    // 1 kV/cm = 1e5 V/m; dividing (not multiplying by 1e-5) keeps the
    // round operating points exact.
    return volts / geom.fe_thickness_m / 1e5;
}

void SwitchingParams::validate() const {
    if (!(tau0_s > 0.0) || !std::isfinite(tau0_s)) throw ConfigError("switching.tau0_s must be positive");
    if (!(activation_field_kv_cm > 0.0) || !std::isfinite(activation_field_kv_cm))
        throw ConfigError("switching.activation_field_kv_cm must be positive");
    if (!(avrami_exponent >= 1.0) || !std::isfinite(avrami_exponent))
        throw ConfigError("switching.avrami_exponent must be >= 1");
    if (!(min_switching_field_kv_cm > 0.0))
        throw ConfigError("switching.min_switching_field_kv_cm must be positive");
}

double characteristic_time_s(const SwitchingParams& params, double field_kv_cm) {
    return params.tau0_s * std::exp(params.activation_field_kv_cm / std::abs(field_kv_cm));
}

double switched_fraction(double reduced_time, double avrami_exponent) {
    if (reduced_time < 0.0) throw ConfigError("reduced time must be >= 0");
    return -std::expm1(-std::pow(reduced_time, avrami_exponent));
}

PolarizationState prepole(int direction) {
    if (direction != 1 && direction != -1) throw ConfigError("prepole direction must be +1 or -1");
    PolarizationState state;
    state.p = static_cast<double>(direction);
    state.onset_p = state.p;
    state.onset_sign = direction;
    state.accumulated_x = 0.0;
    return state;
}

PolarizationState apply_pulse(const PolarizationState& state, const Pulse& pulse,
                              const DeviceGeometry& geom, const SwitchingParams& params) {
    if (!std::isfinite(pulse.amplitude_v) || !std::isfinite(pulse.width_s) || pulse.width_s < 0.0)
        throw ConfigError("pulse must have finite amplitude and width >= 0");
    if (std::abs(pulse.amplitude_v) > geom.breakdown_limit_v)
        throw BreakdownError("pulse amplitude " + format_double(pulse.amplitude_v) +
                             " V exceeds breakdown limit " +
                             format_double(geom.breakdown_limit_v) + " V");

    const double field = field_kv_per_cm(geom, pulse.amplitude_v);
    if (std::abs(field) < params.min_switching_field_kv_cm || pulse.width_s == 0.0) return state;

    const int sign = field > 0.0 ? +1 : -1;
    PolarizationState next = state;
    if (sign != next.onset_sign) {
        next.onset_sign = sign;
        next.onset_p = next.p;
        next.accumulated_x = 0.0;
    }
    next.accumulated_x += pulse.width_s / characteristic_time_s(params, field);
    // Recomputing p from the episode onset (rather than incrementally)
    // makes back-to-back pulses identical to one wider pulse bit-exactly.
    const double f = switched_fraction(next.accumulated_x, params.avrami_exponent);
    next.p = next.onset_p + (static_cast<double>(next.onset_sign) - next.onset_p) * f;
    return next;
}

}  // namespace mtsim
