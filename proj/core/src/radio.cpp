#include "chsim/radio.hpp"

#include <stdexcept>
#include <string>

namespace chsim {

namespace {

void require_nonnegative(double value, const char* what) {
  if (!(value >= 0.0)) {
    throw std::domain_error(std::string(what) + " must be >= 0, got " +
                            std::to_string(value));
  }
}

}  // namespace

void RadioEnergyModel::validate() const {
  if (!(electronics_energy > 0.0))
    throw std::invalid_argument("radio.electronics_energy must be > 0");
  if (!(fs_amp > 0.0)) throw std::invalid_argument("radio.fs_amp must be > 0");
  if (!(mp_amp > 0.0)) throw std::invalid_argument("radio.mp_amp must be > 0");
  if (!(aggregation_energy >= 0.0))
    throw std::invalid_argument("radio.aggregation_energy must be >= 0");
  if (!(effective_threshold() > 0.0))
    throw std::invalid_argument("radio.threshold_distance must be > 0");
}

double tx_energy(double bits, double d, const RadioEnergyModel& radio) {
  require_nonnegative(bits, "tx_energy: bits");
  require_nonnegative(d, "tx_energy: distance");
  return bits * (radio.electronics_energy + radio.amp_energy_per_bit(d));
}

double rx_energy(double bits, const RadioEnergyModel& radio) {
  require_nonnegative(bits, "rx_energy: bits");
  return bits * radio.electronics_energy;
}

double cumulative_energy(double bits, double d, const RadioEnergyModel& radio) {
  require_nonnegative(bits, "cumulative_energy: bits");
  require_nonnegative(d, "cumulative_energy: distance");
  return bits * (radio.amp_energy_per_bit(d) + 2.0 * radio.electronics_energy);
}

}  // namespace chsim
