#pragma once

#include <vector>

#include "chsim/config.hpp"
#include "chsim/node.hpp"

namespace chsim {

struct Network {
  NetworkConfig config{};
  std::vector<SensorNode> nodes;
  BaseStation base_station{};

  int alive_count() const;
  std::vector<int> alive_ids() const;  // ascending
};

// Seeded deployment: positions uniform in the area, per-node queue statistics
// sampled from the configured ranges, full initial energy. Equal seeds give
// bit-identical networks.
Network deploy(const NetworkConfig& cfg);

}  // namespace chsim
