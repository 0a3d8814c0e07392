#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mtsim/device.hpp"
#include "mtsim/memtranstor.hpp"

namespace mtsim {

/// ac excitation and lock-in integration settings. The sample grid must
/// cover a whole number of excitation periods so the demodulation sums
/// are exactly orthogonal.
struct ReadoutConfig {
    double h_ac_amplitude_oe = 1.0;
    double frequency_hz = 10e3;
    double sample_rate_hz = 1e6;
    int n_cycles = 100;
    double noise_rms_v = 0.0;  // additive white Gaussian; 0 disables
    std::uint64_t rng_seed = 12345;

    void validate() const;
};

/// Demodulated in-phase/quadrature pair and the inferred ME coefficient
/// alpha_E = x / (h_ac * t_cm).
struct LockInOutput {
    double x_v = 0.0;
    double y_v = 0.0;
    double alpha_e_measured = 0.0;
};

/// V(t_k) = alpha * t_cm * h_ac * sin(2 pi f t_k) + noise, sampled over
/// n_cycles whole periods.
std::vector<double> synthesize_response(double alpha_true, const ReadoutConfig& cfg,
                                        const DeviceGeometry& geom);

/// Rectangular-window dual-phase demodulation over whole periods:
/// x = (2/N) sum V_k sin(2 pi f t_k), y likewise with cos.
LockInOutput lockin_demodulate(std::span<const double> series, const ReadoutConfig& cfg,
                               const DeviceGeometry& geom);

/// Full measurement chain on the device state. Non-destructive.
LockInOutput measure(const Memtranstor& dev, const ReadoutConfig& cfg);

/// Level index = count of thresholds <= alpha (boundary values go to the
/// upper level). Thresholds must be non-empty and strictly ascending.
int quantize(double alpha, std::span<const double> thresholds);

/// CSV export of a sampled voltage trace: header "t_s,V_volt".
void write_series_csv(std::ostream& out, std::span<const double> series,
                      const ReadoutConfig& cfg);

}  // namespace mtsim
