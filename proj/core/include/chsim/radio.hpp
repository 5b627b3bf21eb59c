#pragma once

#include <cmath>

namespace chsim {

// First-order radio model: transmitting over distance d costs electronics
// plus amplifier energy, with a free-space (d^2) regime up to the threshold
// distance and a multipath (d^4) regime beyond it. Receiving costs
// electronics only. All energies are joules, distances meters, sizes bits.
struct RadioEnergyModel {
  double electronics_energy = 30e-9;   // J/bit, per-bit TX/RX circuitry
  double fs_amp = 10e-12;              // J/bit/m^2, free-space amplifier
  double mp_amp = 0.0013e-12;          // J/bit/m^4, multipath amplifier
  double aggregation_energy = 3e-9;    // J/bit/signal at cluster heads
  double threshold_distance = 0.0;     // m; <= 0 means derive sqrt(fs/mp)
  // When set, the cluster-energy objective uses the literal linear-distance
  // amplifier (fs_amp * d per bit) instead of the two-regime model.
  bool literal_linear_amp = false;

  double effective_threshold() const {
    if (threshold_distance > 0.0) return threshold_distance;
    return std::sqrt(fs_amp / mp_amp);
  }

  // Amplifier energy per bit for a hop of length d, regime-selected.
  // The boundary d == threshold uses the free-space regime.
  double amp_energy_per_bit(double d) const {
    const double d2 = d * d;
    if (d <= effective_threshold()) return fs_amp * d2;
    return mp_amp * d2 * d2;
  }

  void validate() const;
};

// Energy to transmit `bits` over distance `d`.
double tx_energy(double bits, double d, const RadioEnergyModel& radio);

// Energy to receive `bits`.
double rx_energy(double bits, const RadioEnergyModel& radio);

// One-hop cost charged to the pair (transmit + receive), computed from the
// closed form rather than as tx + rx so the identity stays a real check.
double cumulative_energy(double bits, double d, const RadioEnergyModel& radio);

}  // namespace chsim
