#pragma once

#include <functional>
#include <span>
#include <vector>

namespace chsim {

// Objective to maximize over a box-bounded continuous position.
using Objective = std::function<double(std::span<const double>)>;

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

// Result of one optimizer run. fitness_trace holds the best-so-far value
// after each iteration and is nondecreasing by construction.
struct Solution {
  std::vector<double> position;
  double fitness = 0.0;
  std::vector<int> decoded;  // CH node ids when optimizing a selection objective
  int iterations_used = 0;
  std::vector<double> fitness_trace;
  int reorder_count = 0;  // hierarchy rebuilds (swarm optimizer only)
};

void clamp_to_bounds(std::vector<double>& position, std::span<const Bounds> bounds);

}  // namespace chsim
