#include "mtsim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "mtsim/errors.hpp"

namespace mtsim {

ConstraintSet ConstraintSet::defaults() {
    // Margins encode the qualitative switching behavior: "does not alter"
    // as <= 0.01, "partially reverses" as a [0.15, 0.45] single-pulse
    // window, "majority reversed" after two pulses as >= 0.55, and a full
    // pole as >= 0.99. The reset is a 4 x 10 ms pole at 4.0 kV/cm.
    ConstraintSet set;
    set.constraints = {
        {0.5, 1, 10.0, 0.0, 0.01},
        {2.9, 1, 10.0, 0.15, 0.45},
        {2.9, 2, 10.0, 0.55, 1.0},
        {3.0, 1, 10.0, 0.15, 0.45},
        {3.0, 2, 10.0, 0.55, 1.0},
        {5.0, 1, 10.0, 0.99, 1.0},
        {4.0, 4, 10.0, 0.99, 1.0},
    };
    return set;
}

void ConstraintSet::validate() const {
    if (constraints.empty()) throw ConfigError("constraint set must be non-empty");
    for (const SwitchingConstraint& c : constraints) {
        if (!(c.field_kv_cm > 0.0)) throw ConfigError("constraint field must be positive");
        if (c.n_pulses < 1) throw ConfigError("constraint n_pulses must be >= 1");
        if (!(c.width_ms > 0.0)) throw ConfigError("constraint width must be positive");
        if (!(0.0 <= c.min_fraction && c.min_fraction <= 1.0) ||
            !(0.0 <= c.max_fraction && c.max_fraction <= 1.0) ||
            !(c.min_fraction <= c.max_fraction))
            throw ConfigError("constraint bounds must satisfy 0 <= lo <= hi <= 1");
    }
}

double constraint_fraction(const SwitchingParams& params, const SwitchingConstraint& c) {
    const double tau = characteristic_time_s(params, c.field_kv_cm);
    const double x = c.n_pulses * (c.width_ms * 1e-3) / tau;
    return switched_fraction(x, params.avrami_exponent);
}

std::vector<double> evaluate_constraints(const SwitchingParams& params, const ConstraintSet& set) {
    std::vector<double> slacks;
    slacks.reserve(set.constraints.size());
    for (const SwitchingConstraint& c : set.constraints) {
        const double f = constraint_fraction(params, c);
        slacks.push_back(std::min(f - c.min_fraction, c.max_fraction - f));
    }
    return slacks;
}

double min_slack(std::span<const double> residuals) {
    double worst = std::numeric_limits<double>::infinity();
    for (double r : residuals) worst = std::min(worst, r);
    return worst;
}

SearchBox SearchBox::defaults() { return SearchBox{}; }

void SearchBox::validate() const {
    if (!(tau0_lo_s > 0.0 && tau0_lo_s <= tau0_hi_s)) throw ConfigError("bad tau0 box");
    if (!(ea_lo_kv_cm > 0.0 && ea_lo_kv_cm <= ea_hi_kv_cm)) throw ConfigError("bad Ea box");
    if (avrami_exponents.empty()) throw ConfigError("box needs at least one Avrami exponent");
    for (double beta : avrami_exponents)
        if (!(beta >= 1.0)) throw ConfigError("Avrami exponents must be >= 1");
}

namespace {

struct Objective {
    const ConstraintSet& constraints;
    int evaluations = 0;

    double operator()(const SwitchingParams& params) {
        ++evaluations;
        return min_slack(evaluate_constraints(params, constraints));
    }
};

SwitchingParams make_params(double tau0_s, double ea, double beta) {
    SwitchingParams p;
    p.tau0_s = tau0_s;
    p.activation_field_kv_cm = ea;
    p.avrami_exponent = beta;
    return p;
}

}  // namespace

FitResult fit(const ConstraintSet& constraints, const SearchBox& box, int budget) {
    constraints.validate();
    box.validate();
    if (budget < 1) throw ConfigError("fit budget must be >= 1");

    Objective objective{constraints};
    SwitchingParams best = make_params(box.tau0_lo_s, box.ea_lo_kv_cm, box.avrami_exponents[0]);
    double best_slack = -std::numeric_limits<double>::infinity();
    const auto consider = [&](double tau0_s, double ea, double beta) {
        const SwitchingParams candidate = make_params(tau0_s, ea, beta);
        const double slack = objective(candidate);
        if (slack > best_slack) {
            best_slack = slack;
            best = candidate;
        }
    };

    // Coarse log grid; sized to leave budget for the refinement stage.
    const int n_beta = static_cast<int>(box.avrami_exponents.size());
    int n_grid = 25;
    while (n_grid > 2 && n_grid * n_grid * n_beta > (budget * 3) / 4) --n_grid;
    const auto log_point = [](double lo, double hi, int i, int n) {
        if (n <= 1 || lo == hi) return lo;
        return lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    };
    for (double beta : box.avrami_exponents) {
        for (int ti = 0; ti < n_grid && objective.evaluations < budget; ++ti) {
            const double tau0 = log_point(box.tau0_lo_s, box.tau0_hi_s, ti, n_grid);
            for (int ei = 0; ei < n_grid && objective.evaluations < budget; ++ei)
                consider(tau0, log_point(box.ea_lo_kv_cm, box.ea_hi_kv_cm, ei, n_grid), beta);
        }
    }

    // Pattern search on (log tau0, log Ea) around the incumbent, beta fixed.
    double step = std::max(std::log(box.tau0_hi_s / box.tau0_lo_s),
                           std::log(box.ea_hi_kv_cm / box.ea_lo_kv_cm)) /
                  std::max(n_grid - 1, 1);
    const double beta = best.avrami_exponent;
    while (step > 1e-7 && objective.evaluations + 4 <= budget) {
        const double tau0 = best.tau0_s;
        const double ea = best.activation_field_kv_cm;
        const double prev = best_slack;
        const auto clamp_tau = [&](double t) { return std::clamp(t, box.tau0_lo_s, box.tau0_hi_s); };
        const auto clamp_ea = [&](double e) { return std::clamp(e, box.ea_lo_kv_cm, box.ea_hi_kv_cm); };
        consider(clamp_tau(tau0 * std::exp(step)), ea, beta);
        consider(clamp_tau(tau0 * std::exp(-step)), ea, beta);
        consider(tau0, clamp_ea(ea * std::exp(step)), beta);
        consider(tau0, clamp_ea(ea * std::exp(-step)), beta);
        if (best_slack <= prev) step *= 0.5;
    }

    FitResult result;
    result.params = best;
    result.residuals = evaluate_constraints(best, constraints);
    result.feasible = min_slack(result.residuals) >= 0.0;
    result.evaluations = objective.evaluations;
    return result;
}

DerivedThresholds derive_thresholds(const SwitchingParams& params, const DeviceGeometry& geom,
                                    const MagnetModel& magnet, const MEComposition& comp,
                                    std::span<const WriteRecipe> recipes, double nor_b_v_high,
                                    double gate_pulse_width_s) {
    params.validate();
    geom.validate();
    magnet.validate();
    comp.validate();
    if (recipes.size() < 2) throw ConfigError("need at least two write recipes");

    const double m_rem = remanent_state(magnet, +1).m;

    DerivedThresholds out;
    out.level_alpha.reserve(recipes.size());
    for (const WriteRecipe& recipe : recipes) {
        // Worst-case history for the reset: start fully poled against it.
        PolarizationState state = prepole(+1);
        state = apply_pulse(state, recipe.reset, geom, params);
        if (recipe.set) state = apply_pulse(state, *recipe.set, geom, params);
        out.level_alpha.push_back(alpha_e(state.p, m_rem, comp));
    }

    const double degenerate_tol = 1e-6 * comp.alpha_max;
    for (std::size_t i = 1; i < out.level_alpha.size(); ++i) {
        const double gap = out.level_alpha[i] - out.level_alpha[i - 1];
        if (std::abs(gap) < degenerate_tol)
            throw DegenerateBandError("level alphas coincide within tolerance");
        if (gap < 0.0) throw ConfigError("level alphas must ascend with the level index");
        out.thresholds.push_back(0.5 * (out.level_alpha[i - 1] + out.level_alpha[i]));
    }

    // Gate-side values: initialized state and one high NOR_B pulse.
    const int init_dir = (m_rem > 0.0 ? 1 : -1) * comp.orientation_sign;
    out.alpha_initialized = alpha_e(static_cast<double>(init_dir), m_rem, comp);
    PolarizationState one_pulse = prepole(init_dir);
    one_pulse = apply_pulse(one_pulse, Pulse{nor_b_v_high, gate_pulse_width_s}, geom, params);
    out.alpha_single_high = alpha_e(one_pulse.p, m_rem, comp);
    out.nor_b_theta = 0.5 * (out.alpha_initialized + out.alpha_single_high);
    return out;
}

CalibrationSpec parse_calibration_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("constraints file: ") + e.what());
    }

    CalibrationSpec spec;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "constraints") {
                for (const auto& jc : value) {
                    SwitchingConstraint c;
                    for (const auto& [ck, cv] : jc.items()) {
                        if (ck == "field_kv_cm") c.field_kv_cm = cv.get<double>();
                        else if (ck == "n_pulses") c.n_pulses = cv.get<int>();
                        else if (ck == "width_ms") c.width_ms = cv.get<double>();
                        else if (ck == "min_fraction") c.min_fraction = cv.get<double>();
                        else if (ck == "max_fraction") c.max_fraction = cv.get<double>();
                        else throw ConfigError("unknown constraint key '" + ck + "'");
                    }
                    spec.constraints.constraints.push_back(c);
                }
            } else if (key == "box") {
                for (const auto& [bk, bv] : value.items()) {
                    if (bk == "tau0_s") {
                        spec.box.tau0_lo_s = bv.at(0).get<double>();
                        spec.box.tau0_hi_s = bv.at(1).get<double>();
                    } else if (bk == "activation_field_kv_cm") {
                        spec.box.ea_lo_kv_cm = bv.at(0).get<double>();
                        spec.box.ea_hi_kv_cm = bv.at(1).get<double>();
                    } else if (bk == "avrami_exponents") {
                        spec.box.avrami_exponents = bv.get<std::vector<double>>();
                    } else {
                        throw ConfigError("unknown box key '" + bk + "'");
                    }
                }
            } else if (key == "budget") {
                spec.budget = value.get<int>();
            } else {
                throw ConfigError("unknown key '" + key + "' in constraints file");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("constraints file: ") + e.what());
    }
    spec.constraints.validate();
    spec.box.validate();
    if (spec.budget < 1) throw ConfigError("budget must be >= 1");
    return spec;
}

std::string fit_result_to_json(const FitResult& result) {
    nlohmann::json j;
    j["switching"] = {
        {"tau0_s", result.params.tau0_s},
        {"activation_field_kv_cm", result.params.activation_field_kv_cm},
        {"avrami_exponent", result.params.avrami_exponent},
        {"min_switching_field_kv_cm", result.params.min_switching_field_kv_cm},
    };
    j["feasible"] = result.feasible;
    j["min_slack"] = min_slack(result.residuals);
    j["residuals"] = result.residuals;
    j["evaluations"] = result.evaluations;
    return j.dump(2) + "\n";
}

}  // namespace mtsim
