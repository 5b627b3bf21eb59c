#include "chsim/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "chsim/cso.hpp"
#include "chsim/pso.hpp"

namespace chsim {

namespace {

constexpr double kBruteForceSubsetLimit = 1e6;

std::vector<Bounds> rank_bounds(int pool_size, int k) {
  return std::vector<Bounds>(static_cast<std::size_t>(k),
                             Bounds{0.0, static_cast<double>(pool_size - 1)});
}

}  // namespace

double subset_count(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double count = 1.0;
  for (int i = 1; i <= k; ++i) {
    count *= static_cast<double>(n - k + i) / static_cast<double>(i);
    if (!std::isfinite(count)) return std::numeric_limits<double>::infinity();
  }
  return count;
}

std::vector<int> random_select(std::span<const int> alive_ids, int k,
                               RngStream& stream) {
  const int n = static_cast<int>(alive_ids.size());
  if (k < 0) throw std::invalid_argument("random_select: k must be >= 0");
  if (k > n)
    throw std::invalid_argument("random_select: k exceeds the pool size");
  std::vector<int> pool(alive_ids.begin(), alive_ids.end());
  for (int i = 0; i < k; ++i) {
    const int pick = i + stream.uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick)]);
  }
  std::vector<int> chosen(pool.begin(), pool.begin() + k);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

SelectionResult brute_force_select(const ObjectiveTable& table, int k) {
  const int n = static_cast<int>(table.node_ids.size());
  if (k < 1 || k > n)
    throw std::invalid_argument("brute_force_select: k must be in [1, pool size]");
  const double subsets = subset_count(n, k);
  if (subsets > kBruteForceSubsetLimit)
    throw std::invalid_argument(
        "brute_force_select: C(" + std::to_string(n) + ", " + std::to_string(k) +
        ") = " + std::to_string(subsets) + " exceeds the 1e6 subset guard");

  // Enumerate k-subsets of pool indices in lexicographic order; strict
  // improvement keeps the first (lexicographically smallest) optimum.
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;

  SelectionResult best;
  best.set_fitness = -std::numeric_limits<double>::infinity();
  while (true) {
    double total = 0.0;
    for (int i : idx) total += table.fitness[static_cast<std::size_t>(i)];
    if (total > best.set_fitness) {
      best.set_fitness = total;
      best.ch_ids.clear();
      for (int i : idx)
        best.ch_ids.push_back(table.node_ids[static_cast<std::size_t>(i)]);
    }
    // Next combination.
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

SelectionResult select_cluster_heads(SelectorKind kind,
                                     const SelectionInput& input) {
  const auto& pool = input.table.node_ids;
  const int n = static_cast<int>(pool.size());
  if (n == 0) throw std::invalid_argument("select_cluster_heads: empty pool");
  const int k = std::min(input.k, n);
  if (k < 1) throw std::invalid_argument("select_cluster_heads: k must be >= 1");

  SelectionResult result;
  if (k == n) {  // every alive node leads; nothing to optimize
    result.ch_ids.assign(pool.begin(), pool.end());
    result.set_fitness = input.table.set_fitness(result.ch_ids);
    return result;
  }
  switch (kind) {
    case SelectorKind::Random: {
      auto stream = RngStream::derived(input.seed, stream::kRandomSelect);
      result.ch_ids = random_select(pool, k, stream);
      result.set_fitness = input.table.set_fitness(result.ch_ids);
      break;
    }
    case SelectorKind::Oracle: {
      result = brute_force_select(input.table, k);
      break;
    }
    case SelectorKind::Cso: {
      SwarmConfig cfg = input.cso;
      cfg.bounds = rank_bounds(n, k);
      cfg.rng_seed = input.seed;
      Objective objective = [&](std::span<const double> position) {
        return input.table.set_fitness(decode_cluster_heads(position, pool));
      };
      Solution sol = cso_optimize(objective, cfg);
      sol.decoded = decode_cluster_heads(sol.position, pool);
      result.ch_ids = sol.decoded;
      result.set_fitness = sol.fitness;
      result.solution = std::move(sol);
      break;
    }
    case SelectorKind::Pso: {
      PsoConfig cfg = input.pso;
      cfg.bounds = rank_bounds(n, k);
      cfg.rng_seed = input.seed;
      Objective objective = [&](std::span<const double> position) {
        return input.table.set_fitness(decode_cluster_heads(position, pool));
      };
      Solution sol = pso_optimize(objective, cfg);
      sol.decoded = decode_cluster_heads(sol.position, pool);
      result.ch_ids = sol.decoded;
      result.set_fitness = sol.fitness;
      result.solution = std::move(sol);
      break;
    }
  }
  return result;
}

}  // namespace chsim
