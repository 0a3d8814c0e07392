#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "mtsim/memtranstor.hpp"
#include "mtsim/readout.hpp"

namespace mtsim {

enum class GateKind { nor_a, nor_b, nand_gate };

const char* gate_name(GateKind kind);
GateKind gate_from_name(std::string_view name);  // throws ConfigError

/// Output decision applied to the measured alpha_E: sign rule (1 iff
/// alpha > 0) or threshold rule (1 iff alpha > theta).
struct DecisionRule {
    enum class Kind { sign, threshold };
    Kind kind = Kind::sign;
    double theta = 0.0;
};

int decide(const DecisionRule& rule, double alpha);

struct GateConfig {
    GateKind kind = GateKind::nor_a;
    double v_low_v = 10.0;
    double v_high_v = 100.0;
    double pulse_width_s = 0.010;
    double inter_pulse_gap_s = 0.010;
    DecisionRule decision;

    void validate() const;
};

struct LogicRun {
    int x1 = 0;
    int x2 = 0;
    LockInOutput readout;
    double alpha_out = 0.0;
    int output = 0;
};

int expected_output(GateKind kind, int x1, int x2);

/// Pole the device into the positive-high alpha_E state (the polarity
/// whose alpha_E is +alpha_max * |m|). Requires nonzero remanent m.
void initialize(Memtranstor& dev, const GateConfig& gate);

/// Initialization, two sequent input pulses, lock-in readout, decision.
LogicRun run_gate(Memtranstor& dev, const GateConfig& gate, int x1, int x2,
                  const ReadoutConfig& cfg);

struct TruthTableRow {
    LogicRun run;
    int expected = 0;
    bool pass = false;
};

struct TruthTableResult {
    GateKind kind = GateKind::nor_a;
    std::array<TruthTableRow, 4> rows;
    bool pass = false;

    std::vector<int> failing_rows() const;
};

/// All four input pairs, each from a fresh initialization.
TruthTableResult truth_table(Memtranstor& dev, const GateConfig& gate, const ReadoutConfig& cfg);

/// Throws TruthTableMismatch listing the failing rows.
void verify_truth_table(const TruthTableResult& result);

}  // namespace mtsim
