#pragma once

namespace mtsim {

/// Device stack geometry. The ferroelectric thickness sets the
/// voltage-to-field map; electrode figures are informational.
struct DeviceGeometry {
    double fe_thickness_m = 200e-6;
    double electrode_thickness_m = 1e-6;
    double electrode_area_m2 = 25e-6;
    double breakdown_limit_v = 150.0;

    void validate() const;
};

/// E = V / t_fe in kV/cm. Signed; exact for the round operating points
/// (100 V <-> 5.0 kV/cm at 200 um, etc.).
double field_kv_per_cm(const DeviceGeometry& geom, double volts);

/// Switching-kinetics parameters: Merz field activation of the
/// characteristic time plus an Avrami accumulation exponent. Fields below
/// min_switching_field leave the state untouched.
struct SwitchingParams {
    double tau0_s = 0.8e-3;
    double activation_field_kv_cm = 8.8;
    double avrami_exponent = 2.0;
    double min_switching_field_kv_cm = 1.0;

    void validate() const;
};

/// tau(E) = tau0 * exp(Ea / |E|); strictly decreasing in |E|.
double characteristic_time_s(const SwitchingParams& params, double field_kv_cm);

/// Switched domain fraction after reduced time x: F = 1 - exp(-x^beta).
/// Total on x >= 0; F(0) = 0, monotone, F -> 1.
double switched_fraction(double reduced_time, double avrami_exponent);

/// Ideal rectangular voltage pulse.
struct Pulse {
    double amplitude_v = 0.0;
    double width_s = 0.0;
};

/// Net polarization fraction plus the bookkeeping of the ongoing switching
/// episode. An episode is a maximal run of pulses sharing one field
/// polarity; reduced time accumulates within it and resets when the
/// polarity flips, so p always lies between onset_p and onset_sign.
struct PolarizationState {
    double p = 0.0;
    double onset_p = 0.0;
    int onset_sign = +1;
    double accumulated_x = 0.0;
};

/// Saturated state: p = direction exactly, episode history erased.
PolarizationState prepole(int direction);

/// Evolve the polarization under one pulse. Same-polarity pulses
/// accumulate reduced time, so (V, w) twice equals (V, 2w) exactly.
PolarizationState apply_pulse(const PolarizationState& state, const Pulse& pulse,
                              const DeviceGeometry& geom, const SwitchingParams& params);

}  // namespace mtsim
