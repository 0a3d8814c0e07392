#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mtsim {

/// Base class for all simulator errors.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pulse amplitude exceeds the configured breakdown limit.
class BreakdownError : public SimError {
public:
    using SimError::SimError;
};

/// Requested dc bias field is outside the configured range.
class FieldRangeError : public SimError {
public:
    using SimError::SimError;
};

/// Invalid configuration value or violated precondition.
class ConfigError : public SimError {
public:
    using SimError::SimError;
};

/// Time series does not cover a whole number of excitation periods.
class LengthError : public SimError {
public:
    using SimError::SimError;
};

/// Quantization threshold list is empty or not strictly ascending.
class ThresholdError : public SimError {
public:
    using SimError::SimError;
};

/// Two derived state levels coincide within tolerance.
class DegenerateBandError : public SimError {
public:
    using SimError::SimError;
};

/// Pulse program parse failure with 1-based source location.
class ParseError : public SimError {
public:
    ParseError(int line, int column, const std::string& message)
        : SimError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                   ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Pulse program runtime failure, tagged with the offending source line.
class ExecutionError : public SimError {
public:
    ExecutionError(int line, const std::string& message)
        : SimError("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// One or more truth-table rows produced the wrong output bit.
class TruthTableMismatch : public SimError {
public:
    TruthTableMismatch(const std::string& gate, std::vector<int> failing_rows)
        : SimError(gate + " truth table mismatch on " + std::to_string(failing_rows.size()) +
                   " row(s)"),
          failing_rows_(std::move(failing_rows)) {}

    const std::vector<int>& failing_rows() const noexcept { return failing_rows_; }

private:
    std::vector<int> failing_rows_;
};

}  // namespace mtsim
