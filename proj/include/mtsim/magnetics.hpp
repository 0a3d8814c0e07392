#pragma once

#include <vector>

namespace mtsim {

enum class Branch { ascending, descending };

/// Two-branch tanh envelope for the electrode magnetization: coercive
/// field displaces the branch, width sets its steepness.
struct MagnetModel {
    double h_coercive_oe = 100.0;
    double h_width_oe = 80.0;
    double max_field_oe = 10000.0;

    void validate() const;
};

/// Rate-independent magnetization state under dc bias.
struct MagnetizationState {
    double m = 0.0;
    double h_dc_oe = 0.0;
    Branch branch = Branch::descending;
};

/// State after saturating at sign * max_field and returning to zero bias;
/// leaves m at the (nonzero) remanence tanh(h_c / h_w) * sign.
MagnetizationState remanent_state(const MagnetModel& model, int sign);

/// Move the dc bias to h_new. The branch follows the direction of change;
/// m = tanh((h - s*h_c)/h_w) with s = +1 ascending, -1 descending.
MagnetizationState set_h_field(const MagnetizationState& state, double h_new_oe,
                               const MagnetModel& model);

/// Fixed device constants mapping (p, m) to the ME voltage coefficient.
struct MEComposition {
    double alpha_max = 1.0;  // V cm^-1 Oe^-1
    int orientation_sign = -1;

    void validate() const;
};

/// alpha_E = alpha_max * orientation_sign * p * m. Bilinear, odd in each
/// argument; the sign encodes the relative orientation of M and P.
double alpha_e(double p, double m, const MEComposition& comp);

struct SweepPoint {
    double h_oe;
    double m;
    double alpha_e;
};

/// Triangle sweep h_max -> h_min -> h_max repeated `periods` times,
/// recording (H, m, alpha_E) at every step. 2 * n_steps * periods + 1
/// points; the polarization fraction p is held fixed during the sweep.
std::vector<SweepPoint> sweep_h_loop(MagnetizationState state, double h_min_oe, double h_max_oe,
                                     int n_steps, int periods, double p, const MagnetModel& model,
                                     const MEComposition& comp);

}  // namespace mtsim
