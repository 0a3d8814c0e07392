#include "mtsim/logic.hpp"

#include <string>

#include "mtsim/errors.hpp"

namespace mtsim {

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::nor_a: return "NOR_A";
        case GateKind::nor_b: return "NOR_B";
        case GateKind::nand_gate: return "NAND";
    }
    return "?";
}

GateKind gate_from_name(std::string_view name) {
    if (name == "NOR_A") return GateKind::nor_a;
    if (name == "NOR_B") return GateKind::nor_b;
    if (name == "NAND") return GateKind::nand_gate;
    throw ConfigError("unknown gate '" + std::string(name) + "' (expected NOR_A, NOR_B, or NAND)");
}

int decide(const DecisionRule& rule, double alpha) {
    if (rule.kind == DecisionRule::Kind::sign) return alpha > 0.0 ? 1 : 0;
    return alpha > rule.theta ? 1 : 0;
}

void GateConfig::validate() const {
    if (!(v_low_v < v_high_v)) throw ConfigError("gate v_low must be below v_high");
    if (!(pulse_width_s > 0.0)) throw ConfigError("gate pulse width must be positive");
    if (inter_pulse_gap_s < 0.0) throw ConfigError("gate inter-pulse gap must be >= 0");
    if (kind == GateKind::nor_b) {
        if (decision.kind != DecisionRule::Kind::threshold)
            throw ConfigError("NOR_B requires the threshold decision rule");
        if (!(decision.theta > 0.0)) throw ConfigError("NOR_B threshold must be positive");
    } else if (decision.kind != DecisionRule::Kind::sign) {
        throw ConfigError("NOR_A and NAND use the sign decision rule");
    }
}

int expected_output(GateKind kind, int x1, int x2) {
    if (kind == GateKind::nand_gate) return (x1 == 1 && x2 == 1) ? 0 : 1;
    return (x1 == 0 && x2 == 0) ? 1 : 0;  // both NOR modes
}

void initialize(Memtranstor& dev, const GateConfig&) {
    const double m = dev.magnetization.m;
    if (m == 0.0) throw ConfigError("gate initialization requires nonzero remanent magnetization");
    // Pole toward the polarity whose alpha_E is +alpha_max * |m|.
    const int direction = (m > 0.0 ? 1 : -1) * dev.coupling.orientation_sign;
    dev.polarization = prepole(direction);
}

LogicRun run_gate(Memtranstor& dev, const GateConfig& gate, int x1, int x2,
                  const ReadoutConfig& cfg) {
    gate.validate();
    if ((x1 != 0 && x1 != 1) || (x2 != 0 && x2 != 1))
        throw ConfigError("gate inputs must be bits");

    initialize(dev, gate);
    drive_pulse(dev, Pulse{x1 ? gate.v_high_v : gate.v_low_v, gate.pulse_width_s});
    // Inter-pulse gap holds the device at zero field; the state is
    // nonvolatile, so nothing evolves during it.
    drive_pulse(dev, Pulse{x2 ? gate.v_high_v : gate.v_low_v, gate.pulse_width_s});

    LogicRun run;
    run.x1 = x1;
    run.x2 = x2;
    run.readout = measure(dev, cfg);
    run.alpha_out = run.readout.alpha_e_measured;
    run.output = decide(gate.decision, run.alpha_out);
    return run;
}

std::vector<int> TruthTableResult::failing_rows() const {
    std::vector<int> failing;
    for (int i = 0; i < 4; ++i)
        if (!rows[static_cast<std::size_t>(i)].pass) failing.push_back(i);
    return failing;
}

TruthTableResult truth_table(Memtranstor& dev, const GateConfig& gate, const ReadoutConfig& cfg) {
    TruthTableResult result;
    result.kind = gate.kind;
    result.pass = true;
    int row = 0;
    for (int x1 = 0; x1 <= 1; ++x1) {
        for (int x2 = 0; x2 <= 1; ++x2) {
            TruthTableRow& r = result.rows[static_cast<std::size_t>(row++)];
            r.run = run_gate(dev, gate, x1, x2, cfg);
            r.expected = expected_output(gate.kind, x1, x2);
            r.pass = r.run.output == r.expected;
            result.pass = result.pass && r.pass;
        }
    }
    return result;
}

void verify_truth_table(const TruthTableResult& result) {
    if (!result.pass) throw TruthTableMismatch(gate_name(result.kind), result.failing_rows());
}

}  // namespace mtsim
