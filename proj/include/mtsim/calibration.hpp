#pragma once

#include <span>
#include <string>
#include <vector>

#include "mtsim/device.hpp"
#include "mtsim/magnetics.hpp"
#include "mtsim/memory.hpp"

namespace mtsim {

/// Two-sided bound on the switched fraction after n_pulses identical
/// pulses at one field. Bounds encode qualitative behavior as declared
/// design margins.
struct SwitchingConstraint {
    double field_kv_cm = 0.0;
    int n_pulses = 1;
    double width_ms = 10.0;
    double min_fraction = 0.0;
    double max_fraction = 1.0;
};

struct ConstraintSet {
    std::vector<SwitchingConstraint> constraints;

    static ConstraintSet defaults();
    void validate() const;
};

/// F for one constraint under the raw kinetics law (the minimum-field
/// cutoff is a separate device guard, not part of the fitted law).
double constraint_fraction(const SwitchingParams& params, const SwitchingConstraint& c);

/// Signed slack per constraint, min(F - lo, hi - F); >= 0 means satisfied.
std::vector<double> evaluate_constraints(const SwitchingParams& params, const ConstraintSet& set);

double min_slack(std::span<const double> residuals);

/// Search region for the fit: log boxes for tau0 and the activation
/// field, discrete candidates for the Avrami exponent.
struct SearchBox {
    double tau0_lo_s = 1e-5;
    double tau0_hi_s = 0.1;
    double ea_lo_kv_cm = 1.0;
    double ea_hi_kv_cm = 30.0;
    std::vector<double> avrami_exponents = {1.0, 1.5, 2.0, 3.0};

    static SearchBox defaults();
    void validate() const;
};

struct FitResult {
    SwitchingParams params;
    std::vector<double> residuals;
    bool feasible = false;
    int evaluations = 0;
};

/// Deterministic derivative-free search maximizing the minimum slack:
/// coarse log-grid, then pattern-search refinement. Returns a feasible
/// point or the best-effort point with feasible = false.
FitResult fit(const ConstraintSet& constraints, const SearchBox& box, int budget);

/// Forward-evaluated state alphas and the decision cut-points derived
/// from them.
struct DerivedThresholds {
    std::vector<double> level_alpha;   // ascending with level index
    std::vector<double> thresholds;    // adjacent midpoints
    double alpha_initialized = 0.0;    // gate init state
    double alpha_single_high = 0.0;    // after one NOR_B high pulse
    double nor_b_theta = 0.0;          // midpoint of the two values above
};

/// Evaluate the write recipes and the NOR_B intermediate state at the
/// remanent magnetization. Throws DegenerateBandError when two level
/// alphas coincide within tolerance, ConfigError when they do not ascend
/// with the level index.
DerivedThresholds derive_thresholds(const SwitchingParams& params, const DeviceGeometry& geom,
                                    const MagnetModel& magnet, const MEComposition& comp,
                                    std::span<const WriteRecipe> recipes, double nor_b_v_high,
                                    double gate_pulse_width_s);

/// Calibrate-subcommand input: constraints plus optional box/budget.
struct CalibrationSpec {
    ConstraintSet constraints;
    SearchBox box = SearchBox::defaults();
    int budget = 20000;
};

CalibrationSpec parse_calibration_spec(const std::string& json_text);

/// Fitted SwitchingParams as a pasteable config fragment plus slack report.
std::string fit_result_to_json(const FitResult& result);

}  // namespace mtsim
