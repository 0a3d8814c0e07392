#pragma once

#include "mtsim/device.hpp"
#include "mtsim/magnetics.hpp"

namespace mtsim {

/// One simulated device: ferroelectric core state, electrode
/// magnetization, and the constants composing alpha_E from (p, m).
/// Value semantics throughout; drive one instance from one thread.
struct Memtranstor {
    DeviceGeometry geometry;
    SwitchingParams switching;
    MEComposition coupling;
    MagnetModel magnet;
    PolarizationState polarization;
    MagnetizationState magnetization;
};

void drive_pulse(Memtranstor& dev, const Pulse& pulse);
void drive_h_field(Memtranstor& dev, double h_oe);

/// alpha_E of the current state (no measurement chain).
double true_alpha_e(const Memtranstor& dev);

}  // namespace mtsim
