#include "mtsim/memtranstor.hpp"

namespace mtsim {

void drive_pulse(Memtranstor& dev, const Pulse& pulse) {
    dev.polarization = apply_pulse(dev.polarization, pulse, dev.geometry, dev.switching);
}

void drive_h_field(Memtranstor& dev, double h_oe) {
    dev.magnetization = set_h_field(dev.magnetization, h_oe, dev.magnet);
}

double true_alpha_e(const Memtranstor& dev) {
    return alpha_e(dev.polarization.p, dev.magnetization.m, dev.coupling);
}

}  // namespace mtsim
