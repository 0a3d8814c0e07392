#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtsim/memtranstor.hpp"
#include "mtsim/readout.hpp"

namespace mtsim::dsl {

// One statement per line, case-insensitive keywords, '#' comments:
//   PULSE <volts> <ms> | SETH <oersted> | READ [<label>] | INIT <+|-> | WAIT <ms>

struct PulseStmt {
    double amplitude_v = 0.0;
    double width_ms = 0.0;
    bool operator==(const PulseStmt&) const = default;
};

struct SetHStmt {
    double field_oe = 0.0;
    bool operator==(const SetHStmt&) const = default;
};

struct ReadStmt {
    std::string label;  // empty = unlabeled
    bool operator==(const ReadStmt&) const = default;
};

struct InitStmt {
    int direction = +1;
    bool operator==(const InitStmt&) const = default;
};

struct WaitStmt {
    double duration_ms = 0.0;
    bool operator==(const WaitStmt&) const = default;
};

struct CommentStmt {
    std::string text;
    bool operator==(const CommentStmt&) const = default;
};

using Statement = std::variant<PulseStmt, SetHStmt, ReadStmt, InitStmt, WaitStmt, CommentStmt>;

struct PulseProgram {
    std::vector<Statement> statements;
    std::vector<int> lines;  // 1-based source line per statement
};

/// Total: every failure is a located ParseError, nothing else escapes.
PulseProgram parse(std::string_view text);

/// Canonical text; parse(format(p)) structurally equals p.
std::string format(const PulseProgram& program);

/// Statement-payload equality, ignoring source line numbers.
bool structurally_equal(const PulseProgram& a, const PulseProgram& b);

struct TraceRecord {
    int line = 0;
    Statement statement;
    double p = 0.0;
    double m = 0.0;
    double h_dc_oe = 0.0;
    std::optional<LockInOutput> read;
};

/// Run the program against the device. Comments are skipped (not traced);
/// every other statement produces one trace record. READ statements use
/// seeds derived from cfg.rng_seed, so traces are deterministic. Runtime
/// failures abort with an ExecutionError carrying the offending line.
std::vector<TraceRecord> execute(const PulseProgram& program, Memtranstor& dev,
                                 const ReadoutConfig& cfg);

/// One JSON object per record, newline-separated.
std::string trace_to_jsonl(std::span<const TraceRecord> trace);

}  // namespace mtsim::dsl
