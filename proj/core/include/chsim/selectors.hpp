#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chsim/config.hpp"
#include "chsim/objectives.hpp"
#include "chsim/rng.hpp"

namespace chsim {

struct SelectionResult {
  std::vector<int> ch_ids;  // ascending
  double set_fitness = 0.0;
  std::optional<Solution> solution;  // optimizer-backed selectors only
};

struct SelectionInput {
  const ObjectiveTable& table;
  int k = 1;
  std::uint64_t seed = 1;
  // Parameter templates; bounds and seeds are overridden per selection event.
  SwarmConfig cso{};
  PsoConfig pso{};
};

// k distinct ids drawn uniformly from the pool, ascending.
std::vector<int> random_select(std::span<const int> alive_ids, int k,
                               RngStream& stream);

// Exhaustive k-subset oracle. Refuses pools where C(n, k) exceeds
// 1e6 subsets; ties resolve to the lexicographically smallest id set.
SelectionResult brute_force_select(const ObjectiveTable& table, int k);

SelectionResult select_cluster_heads(SelectorKind kind,
                                     const SelectionInput& input);

// Number of k-subsets, saturating at +inf for large pools.
double subset_count(int n, int k);

}  // namespace chsim
