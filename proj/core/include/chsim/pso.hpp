#pragma once

#include <cstdint>
#include <vector>

#include "chsim/solution.hpp"

namespace chsim {

// Global-best particle swarm (maximizing), the reference baseline optimizer.
struct PsoConfig {
  int population = 30;
  int max_iterations = 100;
  double inertia = 0.7;
  double cognitive = 1.5;  // c1
  double social = 1.5;     // c2
  double velocity_clamp_fraction = 0.2;  // of each dimension's range
  std::vector<Bounds> bounds;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

Solution pso_optimize(const Objective& objective, const PsoConfig& cfg);

}  // namespace chsim
