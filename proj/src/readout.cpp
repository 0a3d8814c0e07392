#include "mtsim/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "mtsim/errors.hpp"
#include "mtsim/textutil.hpp"

namespace mtsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t whole_sample_count(const ReadoutConfig& cfg) {
    const double n_d = cfg.n_cycles * cfg.sample_rate_hz / cfg.frequency_hz;
    const double n_round = std::round(n_d);
    if (std::abs(n_d - n_round) > 1e-9 * n_d)
        throw ConfigError("n_cycles * sample_rate / frequency must be a whole sample count");
    return static_cast<std::size_t>(n_round);
}

}  // namespace

void ReadoutConfig::validate() const {
    if (!(h_ac_amplitude_oe > 0.0)) throw ConfigError("readout.h_ac_amplitude_oe must be positive");
    if (!(frequency_hz > 0.0)) throw ConfigError("readout.frequency_hz must be positive");
    if (!(sample_rate_hz >= 20.0 * frequency_hz))
        throw ConfigError("readout.sample_rate_hz must be at least 20x the excitation frequency");
    if (n_cycles < 1) throw ConfigError("readout.n_cycles must be >= 1");
    if (noise_rms_v < 0.0) throw ConfigError("readout.noise_rms_v must be >= 0");
}

std::vector<double> synthesize_response(double alpha_true, const ReadoutConfig& cfg,
                                        const DeviceGeometry& geom) {
    cfg.validate();
    geom.validate();

    const std::size_t n = whole_sample_count(cfg);
    const double thickness_cm = geom.fe_thickness_m * 100.0;
    const double amplitude = alpha_true * thickness_cm * cfg.h_ac_amplitude_oe;
    const double omega = two_pi * cfg.frequency_hz / cfg.sample_rate_hz;

    std::vector<double> series(n);
    for (std::size_t k = 0; k < n; ++k)
        series[k] = amplitude * std::sin(omega * static_cast<double>(k));

    if (cfg.noise_rms_v > 0.0) {
        std::mt19937_64 rng(cfg.rng_seed);
        std::normal_distribution<double> noise(0.0, cfg.noise_rms_v);
        for (double& v : series) v += noise(rng);
    }
    return series;
}

LockInOutput lockin_demodulate(std::span<const double> series, const ReadoutConfig& cfg,
                               const DeviceGeometry& geom) {
    cfg.validate();
    geom.validate();
    if (series.empty()) throw LengthError("series is empty");

    const double cycles = static_cast<double>(series.size()) * cfg.frequency_hz / cfg.sample_rate_hz;
    if (std::abs(cycles - std::round(cycles)) > 1e-9 || cycles < 1.0 - 1e-9)
        throw LengthError("series must cover a whole number of excitation periods");

    const double omega = two_pi * cfg.frequency_hz / cfg.sample_rate_hz;
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double phase = omega * static_cast<double>(k);
        sum_x += series[k] * std::sin(phase);
        sum_y += series[k] * std::cos(phase);
    }

    LockInOutput out;
    const double n = static_cast<double>(series.size());
    out.x_v = 2.0 * sum_x / n;
    out.y_v = 2.0 * sum_y / n;
    out.alpha_e_measured = out.x_v / (cfg.h_ac_amplitude_oe * geom.fe_thickness_m * 100.0);
    return out;
}

LockInOutput measure(const Memtranstor& dev, const ReadoutConfig& cfg) {
    const double alpha_true = true_alpha_e(dev);
    const auto series = synthesize_response(alpha_true, cfg, dev.geometry);
    return lockin_demodulate(series, cfg, dev.geometry);
}

int quantize(double alpha, std::span<const double> thresholds) {
    if (thresholds.empty()) throw ThresholdError("threshold list is empty");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i - 1] < thresholds[i]))
            throw ThresholdError("thresholds must be strictly ascending");
    const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), alpha);
    return static_cast<int>(it - thresholds.begin());
}

void write_series_csv(std::ostream& out, std::span<const double> series,
                      const ReadoutConfig& cfg) {
    out << "t_s,V_volt\n";
    for (std::size_t k = 0; k < series.size(); ++k)
        out << format_double(static_cast<double>(k) / cfg.sample_rate_hz) << ','
            << format_double(series[k]) << '\n';
}

}  // namespace mtsim
