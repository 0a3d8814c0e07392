#include "mtsim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtsim/errors.hpp"

namespace mtsim {

using nlohmann::json;

void GatesConfig::validate() const {
    if (!(pulse_width_s > 0.0)) throw ConfigError("gates.pulse_width_s must be positive");
    if (inter_pulse_gap_s < 0.0) throw ConfigError("gates.inter_pulse_gap_s must be >= 0");
    for (const auto& [name, v] : {std::pair{"nor_a", nor_a}, {"nor_b", nor_b}, {"nand", nand_gate}})
        if (!(v.v_low_v < v.v_high_v))
            throw ConfigError(std::string("gates.") + name + ": v_low_v must be below v_high_v");
    if (nor_b_theta_override && !(*nor_b_theta_override > 0.0))
        throw ConfigError("gates.nor_b_theta must be positive");
}

void MemoryConfig::validate() const {
    if (set_pulses.size() < 2) throw ConfigError("memory needs at least two levels");
    if (!(reset_pulse.width_s > 0.0)) throw ConfigError("memory.reset_pulse width must be positive");
    for (const auto& set : set_pulses)
        if (set && !(set->width_s > 0.0)) throw ConfigError("memory set pulse width must be positive");
    if (!(band_halfwidth > 0.0)) throw ConfigError("memory.band_halfwidth must be positive");
    if (!(min_band_separation > 2.0 * band_halfwidth))
        throw ConfigError("memory.min_band_separation must exceed twice the band halfwidth");
}

std::vector<WriteRecipe> MemoryConfig::recipes() const {
    std::vector<WriteRecipe> out;
    out.reserve(set_pulses.size());
    for (const auto& set : set_pulses) out.push_back({reset_pulse, set});
    return out;
}

RunConfig RunConfig::defaults() { return RunConfig{}; }

void RunConfig::validate() const {
    geometry.validate();
    switching.validate();
    magnet.validate();
    coupling.validate();
    readout.validate();
    memory.validate();
    gates.validate();
}

namespace {

double get_number(const json& v, const std::string& ctx) {
    if (!v.is_number()) throw ConfigError(ctx + " must be a number");
    return v.get<double>();
}

int get_int(const json& v, const std::string& ctx) {
    if (!v.is_number_integer()) throw ConfigError(ctx + " must be an integer");
    return v.get<int>();
}

Pulse get_pulse(const json& v, const std::string& ctx) {
    Pulse p;
    bool have_amp = false, have_width = false;
    if (!v.is_object()) throw ConfigError(ctx + " must be an object");
    for (const auto& [key, value] : v.items()) {
        if (key == "amplitude_v") {
            p.amplitude_v = get_number(value, ctx + ".amplitude_v");
            have_amp = true;
        } else if (key == "width_s") {
            p.width_s = get_number(value, ctx + ".width_s");
            have_width = true;
        } else {
            throw ConfigError("unknown key '" + ctx + "." + key + "'");
        }
    }
    if (!have_amp || !have_width)
        throw ConfigError(ctx + " needs amplitude_v and width_s");
    return p;
}

void parse_geometry(const json& j, DeviceGeometry& g) {
    for (const auto& [key, v] : j.items()) {
        if (key == "fe_thickness_m") g.fe_thickness_m = get_number(v, "device." + key);
        else if (key == "electrode_thickness_m") g.electrode_thickness_m = get_number(v, "device." + key);
        else if (key == "electrode_area_m2") g.electrode_area_m2 = get_number(v, "device." + key);
        else if (key == "breakdown_limit_v") g.breakdown_limit_v = get_number(v, "device." + key);
        else throw ConfigError("unknown key 'device." + key + "'");
    }
}

void parse_switching(const json& j, SwitchingParams& s) {
    for (const auto& [key, v] : j.items()) {
        if (key == "tau0_s") s.tau0_s = get_number(v, "switching." + key);
        else if (key == "activation_field_kv_cm") s.activation_field_kv_cm = get_number(v, "switching." + key);
        else if (key == "avrami_exponent") s.avrami_exponent = get_number(v, "switching." + key);
        else if (key == "min_switching_field_kv_cm") s.min_switching_field_kv_cm = get_number(v, "switching." + key);
        else throw ConfigError("unknown key 'switching." + key + "'");
    }
}

void parse_magnet(const json& j, MagnetModel& m) {
    for (const auto& [key, v] : j.items()) {
        if (key == "h_coercive_oe") m.h_coercive_oe = get_number(v, "magnet." + key);
        else if (key == "h_width_oe") m.h_width_oe = get_number(v, "magnet." + key);
        else if (key == "max_field_oe") m.max_field_oe = get_number(v, "magnet." + key);
        else throw ConfigError("unknown key 'magnet." + key + "'");
    }
}

void parse_coupling(const json& j, MEComposition& c) {
    for (const auto& [key, v] : j.items()) {
        if (key == "alpha_max") c.alpha_max = get_number(v, "coupling." + key);
        else if (key == "orientation_sign") c.orientation_sign = get_int(v, "coupling." + key);
        else throw ConfigError("unknown key 'coupling." + key + "'");
    }
}

void parse_readout(const json& j, ReadoutConfig& r) {
    for (const auto& [key, v] : j.items()) {
        if (key == "h_ac_amplitude_oe") r.h_ac_amplitude_oe = get_number(v, "readout." + key);
        else if (key == "frequency_hz") r.frequency_hz = get_number(v, "readout." + key);
        else if (key == "sample_rate_hz") r.sample_rate_hz = get_number(v, "readout." + key);
        else if (key == "n_cycles") r.n_cycles = get_int(v, "readout." + key);
        else if (key == "noise_rms_v") r.noise_rms_v = get_number(v, "readout." + key);
        else if (key == "rng_seed") r.rng_seed = v.get<std::uint64_t>();
        else throw ConfigError("unknown key 'readout." + key + "'");
    }
}

void parse_memory(const json& j, MemoryConfig& m) {
    for (const auto& [key, v] : j.items()) {
        if (key == "reset_pulse") {
            m.reset_pulse = get_pulse(v, "memory.reset_pulse");
        } else if (key == "set_pulses") {
            if (!v.is_array()) throw ConfigError("memory.set_pulses must be an array");
            m.set_pulses.clear();
            for (const auto& jv : v) {
                if (jv.is_null()) m.set_pulses.push_back(std::nullopt);
                else m.set_pulses.push_back(get_pulse(jv, "memory.set_pulses[]"));
            }
        } else if (key == "band_halfwidth") {
            m.band_halfwidth = get_number(v, "memory." + key);
        } else if (key == "min_band_separation") {
            m.min_band_separation = get_number(v, "memory." + key);
        } else {
            throw ConfigError("unknown key 'memory." + key + "'");
        }
    }
}

void parse_gate_voltages(const json& j, GateVoltages& g, const std::string& ctx) {
    for (const auto& [key, v] : j.items()) {
        if (key == "v_low_v") g.v_low_v = get_number(v, ctx + "." + key);
        else if (key == "v_high_v") g.v_high_v = get_number(v, ctx + "." + key);
        else throw ConfigError("unknown key '" + ctx + "." + key + "'");
    }
}

void parse_gates(const json& j, GatesConfig& g) {
    for (const auto& [key, v] : j.items()) {
        if (key == "pulse_width_s") g.pulse_width_s = get_number(v, "gates." + key);
        else if (key == "inter_pulse_gap_s") g.inter_pulse_gap_s = get_number(v, "gates." + key);
        else if (key == "nor_a") parse_gate_voltages(v, g.nor_a, "gates.nor_a");
        else if (key == "nor_b") parse_gate_voltages(v, g.nor_b, "gates.nor_b");
        else if (key == "nand") parse_gate_voltages(v, g.nand_gate, "gates.nand");
        else if (key == "nor_b_theta") {
            if (v.is_null()) g.nor_b_theta_override = std::nullopt;
            else g.nor_b_theta_override = get_number(v, "gates.nor_b_theta");
        }
        else throw ConfigError("unknown key 'gates." + key + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");

    RunConfig cfg = RunConfig::defaults();
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "device") parse_geometry(v, cfg.geometry);
            else if (key == "switching") parse_switching(v, cfg.switching);
            else if (key == "magnet") parse_magnet(v, cfg.magnet);
            else if (key == "coupling") parse_coupling(v, cfg.coupling);
            else if (key == "readout") parse_readout(v, cfg.readout);
            else if (key == "memory") parse_memory(v, cfg.memory);
            else if (key == "gates") parse_gates(v, cfg.gates);
            else throw ConfigError("unknown key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["device"] = {
        {"fe_thickness_m", cfg.geometry.fe_thickness_m},
        {"electrode_thickness_m", cfg.geometry.electrode_thickness_m},
        {"electrode_area_m2", cfg.geometry.electrode_area_m2},
        {"breakdown_limit_v", cfg.geometry.breakdown_limit_v},
    };
    j["switching"] = {
        {"tau0_s", cfg.switching.tau0_s},
        {"activation_field_kv_cm", cfg.switching.activation_field_kv_cm},
        {"avrami_exponent", cfg.switching.avrami_exponent},
        {"min_switching_field_kv_cm", cfg.switching.min_switching_field_kv_cm},
    };
    j["magnet"] = {
        {"h_coercive_oe", cfg.magnet.h_coercive_oe},
        {"h_width_oe", cfg.magnet.h_width_oe},
        {"max_field_oe", cfg.magnet.max_field_oe},
    };
    j["coupling"] = {
        {"alpha_max", cfg.coupling.alpha_max},
        {"orientation_sign", cfg.coupling.orientation_sign},
    };
    j["readout"] = {
        {"h_ac_amplitude_oe", cfg.readout.h_ac_amplitude_oe},
        {"frequency_hz", cfg.readout.frequency_hz},
        {"sample_rate_hz", cfg.readout.sample_rate_hz},
        {"n_cycles", cfg.readout.n_cycles},
        {"noise_rms_v", cfg.readout.noise_rms_v},
        {"rng_seed", cfg.readout.rng_seed},
    };
    json set_pulses = json::array();
    for (const auto& set : cfg.memory.set_pulses) {
        if (set) set_pulses.push_back({{"amplitude_v", set->amplitude_v}, {"width_s", set->width_s}});
        else set_pulses.push_back(nullptr);
    }
    j["memory"] = {
        {"reset_pulse",
         {{"amplitude_v", cfg.memory.reset_pulse.amplitude_v}, {"width_s", cfg.memory.reset_pulse.width_s}}},
        {"set_pulses", set_pulses},
        {"band_halfwidth", cfg.memory.band_halfwidth},
        {"min_band_separation", cfg.memory.min_band_separation},
    };
    j["gates"] = {
        {"pulse_width_s", cfg.gates.pulse_width_s},
        {"inter_pulse_gap_s", cfg.gates.inter_pulse_gap_s},
        {"nor_a", {{"v_low_v", cfg.gates.nor_a.v_low_v}, {"v_high_v", cfg.gates.nor_a.v_high_v}}},
        {"nor_b", {{"v_low_v", cfg.gates.nor_b.v_low_v}, {"v_high_v", cfg.gates.nor_b.v_high_v}}},
        {"nand", {{"v_low_v", cfg.gates.nand_gate.v_low_v}, {"v_high_v", cfg.gates.nand_gate.v_high_v}}},
        {"nor_b_theta",
         cfg.gates.nor_b_theta_override ? json(*cfg.gates.nor_b_theta_override) : json(nullptr)},
    };
    return j.dump(2) + "\n";
}

Memtranstor fresh_device(const RunConfig& cfg) {
    cfg.validate();
    Memtranstor dev;
    dev.geometry = cfg.geometry;
    dev.switching = cfg.switching;
    dev.coupling = cfg.coupling;
    dev.magnet = cfg.magnet;
    dev.polarization = PolarizationState{};
    dev.magnetization = remanent_state(cfg.magnet, +1);
    return dev;
}

SimulationSetup build_setup(const RunConfig& cfg) {
    cfg.validate();
    SimulationSetup setup;
    setup.config = cfg;
    const auto recipes = cfg.memory.recipes();
    setup.derived =
        derive_thresholds(cfg.switching, cfg.geometry, cfg.magnet, cfg.coupling, recipes,
                          cfg.gates.nor_b.v_high_v, cfg.gates.pulse_width_s);

    setup.level_table.min_band_separation = cfg.memory.min_band_separation;
    setup.level_table.thresholds = setup.derived.thresholds;
    for (std::size_t i = 0; i < recipes.size(); ++i) {
        MemoryLevel level;
        level.index = static_cast<int>(i);
        level.recipe = recipes[i];
        level.alpha_nominal = setup.derived.level_alpha[i];
        level.band_lo = level.alpha_nominal - cfg.memory.band_halfwidth;
        level.band_hi = level.alpha_nominal + cfg.memory.band_halfwidth;
        setup.level_table.levels.push_back(level);
    }
    setup.level_table.validate();
    return setup;
}

GateConfig gate_config(const SimulationSetup& setup, GateKind kind) {
    const GatesConfig& gates = setup.config.gates;
    GateConfig gate;
    gate.kind = kind;
    gate.pulse_width_s = gates.pulse_width_s;
    gate.inter_pulse_gap_s = gates.inter_pulse_gap_s;
    switch (kind) {
        case GateKind::nor_a:
            gate.v_low_v = gates.nor_a.v_low_v;
            gate.v_high_v = gates.nor_a.v_high_v;
            gate.decision = {DecisionRule::Kind::sign, 0.0};
            break;
        case GateKind::nor_b: {
            gate.v_low_v = gates.nor_b.v_low_v;
            gate.v_high_v = gates.nor_b.v_high_v;
            const double theta =
                gates.nor_b_theta_override.value_or(setup.derived.nor_b_theta);
            if (!(theta > 0.0 && theta < setup.derived.alpha_initialized))
                throw ConfigError("NOR_B threshold must lie in (0, alpha_initialized)");
            gate.decision = {DecisionRule::Kind::threshold, theta};
            break;
        }
        case GateKind::nand_gate:
            gate.v_low_v = gates.nand_gate.v_low_v;
            gate.v_high_v = gates.nand_gate.v_high_v;
            gate.decision = {DecisionRule::Kind::sign, 0.0};
            break;
    }
    gate.validate();
    return gate;
}

}  // namespace mtsim
