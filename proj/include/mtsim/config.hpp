#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtsim/calibration.hpp"
#include "mtsim/device.hpp"
#include "mtsim/logic.hpp"
#include "mtsim/magnetics.hpp"
#include "mtsim/memory.hpp"
#include "mtsim/memtranstor.hpp"
#include "mtsim/readout.hpp"

namespace mtsim {

struct GateVoltages {
    double v_low_v = 10.0;
    double v_high_v = 100.0;
};

struct GatesConfig {
    double pulse_width_s = 0.010;
    double inter_pulse_gap_s = 0.010;
    GateVoltages nor_a{10.0, 100.0};
    GateVoltages nor_b{10.0, 60.0};
    GateVoltages nand_gate{10.0, 58.0};
    std::optional<double> nor_b_theta_override;  // default: derived midpoint

    void validate() const;
};

/// Level write recipes (ordered by level index = ascending alpha) and the
/// band bookkeeping used to validate separation.
struct MemoryConfig {
    Pulse reset_pulse{-80.0, 0.040};
    std::vector<std::optional<Pulse>> set_pulses = {
        Pulse{100.0, 0.010}, Pulse{58.0, 0.010}, Pulse{52.0, 0.010}, std::nullopt};
    double band_halfwidth = 0.05;
    double min_band_separation = 0.1;

    void validate() const;
    std::vector<WriteRecipe> recipes() const;
};

/// Whole-run configuration. A single JSON file with these keys overrides
/// the built-in defaults; unknown keys are rejected and every component
/// invariant is re-validated at load.
struct RunConfig {
    DeviceGeometry geometry;
    SwitchingParams switching;
    MagnetModel magnet;
    MEComposition coupling;
    ReadoutConfig readout;
    MemoryConfig memory;
    GatesConfig gates;

    static RunConfig defaults();
    void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

/// Unpoled polarization (p = 0) at positive magnetic remanence.
Memtranstor fresh_device(const RunConfig& cfg);

/// Config plus the model-derived decision values everything downstream
/// shares (level table, thresholds, NOR_B theta).
struct SimulationSetup {
    RunConfig config;
    DerivedThresholds derived;
    LevelTable level_table;
};

SimulationSetup build_setup(const RunConfig& cfg);
GateConfig gate_config(const SimulationSetup& setup, GateKind kind);

}  // namespace mtsim
