#include "mtsim/memory.hpp"

#include <string>
#include <utility>

#include "mtsim/errors.hpp"

namespace mtsim {

void LevelTable::validate() const {
    if (levels.size() < 2) throw ConfigError("level table needs at least two levels");
    if (thresholds.size() != levels.size() - 1)
        throw ConfigError("level table needs one threshold per adjacent level pair");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].index != static_cast<int>(i))
            throw ConfigError("level indices must be 0..n-1 in order");
        if (!(levels[i].band_lo <= levels[i].alpha_nominal &&
              levels[i].alpha_nominal <= levels[i].band_hi))
            throw ConfigError("level band must contain its nominal alpha");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const double gap = levels[i].alpha_nominal - levels[i - 1].alpha_nominal;
        if (!(gap >= min_band_separation))
            throw ConfigError("adjacent level alphas closer than the configured separation");
        if (!(levels[i - 1].band_hi < levels[i].band_lo))
            throw ConfigError("level bands overlap");
    }
}

MemoryController::MemoryController(LevelTable table, ReadoutConfig readout)
    : table_(std::move(table)), readout_(std::move(readout)) {
    table_.validate();
    readout_.validate();
}

void MemoryController::write_level(Memtranstor& dev, int level) const {
    if (level < 0 || level >= static_cast<int>(table_.levels.size()))
        throw ConfigError("level " + std::to_string(level) + " not in table");
    const WriteRecipe& recipe = table_.levels[static_cast<std::size_t>(level)].recipe;
    drive_pulse(dev, recipe.reset);
    if (recipe.set) drive_pulse(dev, *recipe.set);
}

LockInOutput MemoryController::read_raw(const Memtranstor& dev) const {
    return measure(dev, readout_);
}

int MemoryController::read_level(const Memtranstor& dev) const {
    return quantize(read_raw(dev).alpha_e_measured, table_.thresholds);
}

CyclingReport MemoryController::cycle_endurance(Memtranstor& dev, std::span<const int> pattern,
                                                int n_cycles) const {
    if (n_cycles < 1) throw ConfigError("cycle_endurance requires n_cycles >= 1");
    if (pattern.empty()) throw ConfigError("cycle_endurance requires a non-empty pattern");

    CyclingReport report;
    report.records.reserve(static_cast<std::size_t>(n_cycles) * pattern.size());
    std::uint64_t read_index = 0;
    for (int cycle = 0; cycle < n_cycles; ++cycle) {
        for (int level : pattern) {
            write_level(dev, level);
            ReadoutConfig cfg = readout_;
            cfg.rng_seed = readout_.rng_seed + read_index++;
            const LockInOutput lock = measure(dev, cfg);
            const int read_back = quantize(lock.alpha_e_measured, table_.thresholds);
            report.records.push_back({cycle, level, lock.alpha_e_measured, read_back});
            if (read_back != level) ++report.error_count;
        }
    }
    return report;
}

}  // namespace mtsim
