#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mtsim/memtranstor.hpp"
#include "mtsim/readout.hpp"

namespace mtsim {

/// Write recipe: a saturating reset pole, then an optional set pulse that
/// partially or fully reverses the polarization.
struct WriteRecipe {
    Pulse reset;
    std::optional<Pulse> set;
};

struct MemoryLevel {
    int index = 0;
    WriteRecipe recipe;
    double alpha_nominal = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
};

/// Levels ordered by ascending nominal alpha_E, plus the read thresholds
/// (midpoints between adjacent nominal values).
struct LevelTable {
    std::vector<MemoryLevel> levels;
    std::vector<double> thresholds;
    double min_band_separation = 0.1;

    void validate() const;
};

struct CycleRecord {
    int cycle = 0;
    int level_written = 0;
    double alpha_measured = 0.0;
    int level_read = 0;
};

struct CyclingReport {
    std::vector<CycleRecord> records;
    int error_count = 0;
};

/// Multi-level memory controller over one device. Writes are
/// reset-then-set and therefore history-independent; reads are
/// non-destructive.
class MemoryController {
public:
    MemoryController(LevelTable table, ReadoutConfig readout);

    const LevelTable& table() const { return table_; }

    void write_level(Memtranstor& dev, int level) const;
    int read_level(const Memtranstor& dev) const;
    LockInOutput read_raw(const Memtranstor& dev) const;

    /// Repeat `pattern` for n_cycles, measuring after every write. Reads
    /// use per-record derived seeds so noisy runs stay deterministic.
    CyclingReport cycle_endurance(Memtranstor& dev, std::span<const int> pattern,
                                  int n_cycles) const;

private:
    LevelTable table_;
    ReadoutConfig readout_;
};

}  // namespace mtsim
