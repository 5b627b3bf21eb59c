#include "chsim/cso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chsim {

namespace {

// Caps the argument of exp() in the move factors. Unbounded fitness gaps can
// otherwise produce inf factors and NaN positions when the pulled-toward
// chicken shares a coordinate.
constexpr double kMaxExpArg = 50.0;

double bounded_exp(double x) { return std::exp(std::min(x, kMaxExpArg)); }

int fraction_count(int population, double fraction) {
  return static_cast<int>(std::lround(fraction * population));
}

}  // namespace

int SwarmConfig::resolved_roosters() const {
  if (!use_fractions) return rooster_count;
  return std::max(1, fraction_count(population, rooster_fraction));
}

int SwarmConfig::resolved_hens() const {
  if (!use_fractions) return hen_count;
  return std::max(1, fraction_count(population, hen_fraction));
}

int SwarmConfig::resolved_mothers() const {
  const int hens = resolved_hens();
  int mothers = mother_count;
  if (use_fractions) mothers = fraction_count(hens, mother_fraction);
  if (mothers < 0) mothers = hens;
  return std::min(mothers, hens);
}

int SwarmConfig::resolved_chicks() const {
  return population - resolved_roosters() - resolved_hens();
}

void SwarmConfig::validate() const {
  if (population < 1) throw std::invalid_argument("cso.population must be >= 1");
  const int roosters = resolved_roosters();
  const int hens = resolved_hens();
  const int chicks = resolved_chicks();
  if (roosters < 1) throw std::invalid_argument("cso.rooster_count must be >= 1");
  if (hens < 0) throw std::invalid_argument("cso.hen_count must be >= 0");
  if (chicks < 0)
    throw std::invalid_argument(
        "cso.population must be >= rooster_count + hen_count (got population " +
        std::to_string(population) + ")");
  if (chicks > 0 && resolved_mothers() < 1)
    throw std::invalid_argument("cso: chicks present but no mother hens");
  if (reorder_period < 1)
    throw std::invalid_argument("cso.reorder_period must be >= 1");
  if (max_iterations < 1)
    throw std::invalid_argument("cso.max_iterations must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("cso.epsilon must be > 0");
  if (!(fl_min <= fl_max) || fl_min < 0.0)
    throw std::invalid_argument("cso: fl range invalid");
  if (bounds.empty()) throw std::invalid_argument("cso.bounds must be non-empty");
  for (const auto& b : bounds)
    if (!(b.lo <= b.hi)) throw std::invalid_argument("cso: bounds must have lo <= hi");
}

void rank_and_partition(Swarm& swarm, const SwarmConfig& cfg,
                        RngStream& partition_stream) {
  const int pop = static_cast<int>(swarm.chickens.size());
  std::vector<int> order(static_cast<std::size_t>(pop));
  std::iota(order.begin(), order.end(), 0);
  // Best first; equal fitness keeps index order.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return swarm.chickens[static_cast<std::size_t>(a)].fitness >
           swarm.chickens[static_cast<std::size_t>(b)].fitness;
  });

  const int roosters = cfg.resolved_roosters();
  const int hens = cfg.resolved_hens();
  swarm.roosters.clear();
  swarm.hens.clear();
  swarm.chicks.clear();
  for (int rank = 0; rank < pop; ++rank) {
    const int i = order[static_cast<std::size_t>(rank)];
    auto& chicken = swarm.chickens[static_cast<std::size_t>(i)];
    chicken.mate = -1;
    chicken.mother = -1;
    if (rank < roosters) {
      chicken.role = ChickenRole::Rooster;
      swarm.roosters.push_back(i);
    } else if (rank < roosters + hens) {
      chicken.role = ChickenRole::Hen;
      swarm.hens.push_back(i);
    } else {
      chicken.role = ChickenRole::Chick;
      swarm.chicks.push_back(i);
    }
  }

  // Mother hens: a seeded sample of the hens, without replacement.
  const int mother_count =
      std::min(cfg.resolved_mothers(), static_cast<int>(swarm.hens.size()));
  std::vector<int> pool = swarm.hens;
  swarm.mothers.clear();
  for (int m = 0; m < mother_count; ++m) {
    const int pick = m + partition_stream.uniform_index(static_cast<int>(pool.size()) - m);
    std::swap(pool[static_cast<std::size_t>(m)], pool[static_cast<std::size_t>(pick)]);
    swarm.mothers.push_back(pool[static_cast<std::size_t>(m)]);
  }
  std::sort(swarm.mothers.begin(), swarm.mothers.end());

  for (int c : swarm.chicks) {
    swarm.chickens[static_cast<std::size_t>(c)].mother =
        swarm.mothers[static_cast<std::size_t>(
            partition_stream.uniform_index(static_cast<int>(swarm.mothers.size())))];
  }
  for (int h : swarm.hens) {
    // Mate drawn from the whole swarm, skipping self.
    int mate = partition_stream.uniform_index(pop - 1);
    if (mate >= h) ++mate;
    swarm.chickens[static_cast<std::size_t>(h)].mate = mate;
  }
}

Swarm init_swarm(const SwarmConfig& cfg, const Objective& objective,
                 RngStream& init_stream, RngStream& partition_stream) {
  cfg.validate();
  Swarm swarm;
  swarm.chickens.resize(static_cast<std::size_t>(cfg.population));
  const std::size_t dims = cfg.bounds.size();
  for (auto& chicken : swarm.chickens) {
    chicken.position.resize(dims);
    for (std::size_t d = 0; d < dims; ++d)
      chicken.position[d] = init_stream.uniform(cfg.bounds[d].lo, cfg.bounds[d].hi);
    chicken.fitness = objective(chicken.position);
  }
  rank_and_partition(swarm, cfg, partition_stream);
  return swarm;
}

double rooster_sigma2(double f_i, double f_k, double epsilon) {
  if (f_i <= f_k) return 1.0;
  return std::exp((f_k - f_i) / (std::abs(f_i) + epsilon));
}

double hen_s1(double f_i, double f_r1, double epsilon) {
  return bounded_exp((f_i - f_r1) / (std::abs(f_i) + epsilon));
}

double hen_s2(double f_i, double f_r2) { return bounded_exp(f_r2 - f_i); }

std::vector<double> rooster_move(std::span<const double> pos, double sigma2,
                                 std::span<const double> gauss_draws) {
  const double sigma = std::sqrt(sigma2);
  std::vector<double> out(pos.size());
  for (std::size_t d = 0; d < pos.size(); ++d)
    out[d] = pos[d] * (1.0 + sigma * gauss_draws[d]);
  return out;
}

std::vector<double> hen_move(std::span<const double> pos,
                             std::span<const double> r1_pos,
                             std::span<const double> r2_pos, double s1,
                             double s2, double rand1, double rand2) {
  std::vector<double> out(pos.size());
  for (std::size_t d = 0; d < pos.size(); ++d) {
    out[d] = pos[d] + s1 * rand1 * (r1_pos[d] - pos[d]) +
             s2 * rand2 * (r2_pos[d] - pos[d]);
  }
  return out;
}

std::vector<double> chick_move(std::span<const double> pos,
                               std::span<const double> mother_pos, double fl) {
  std::vector<double> out(pos.size());
  for (std::size_t d = 0; d < pos.size(); ++d)
    out[d] = pos[d] + fl * (mother_pos[d] - pos[d]);
  return out;
}

Solution cso_optimize(const Objective& objective, const SwarmConfig& cfg) {
  cfg.validate();
  auto init_stream = RngStream::derived(cfg.rng_seed, stream::kSwarmInit);
  auto partition_stream = RngStream::derived(cfg.rng_seed, stream::kSwarmPartition);
  auto rooster_pick = RngStream::derived(cfg.rng_seed, stream::kRoosterPick);
  auto rooster_noise = RngStream::derived(cfg.rng_seed, stream::kRoosterNoise);
  auto hen_pick = RngStream::derived(cfg.rng_seed, stream::kHenPick);
  auto hen_noise = RngStream::derived(cfg.rng_seed, stream::kHenNoise);
  auto chick_noise = RngStream::derived(cfg.rng_seed, stream::kChickNoise);

  Swarm swarm = init_swarm(cfg, objective, init_stream, partition_stream);
  const std::size_t dims = cfg.bounds.size();

  Solution best;
  best.fitness = -std::numeric_limits<double>::infinity();
  for (const auto& chicken : swarm.chickens) {
    if (chicken.fitness > best.fitness) {
      best.fitness = chicken.fitness;
      best.position = chicken.position;
    }
  }
  best.reorder_count = 1;  // the initial partition counts as iteration 0's
  best.fitness_trace.reserve(static_cast<std::size_t>(cfg.max_iterations));

  std::vector<double> gauss(dims);
  for (int t = 0; t < cfg.max_iterations; ++t) {
    if (t > 0 && t % cfg.reorder_period == 0) {
      rank_and_partition(swarm, cfg, partition_stream);
      ++best.reorder_count;
    }

    for (int i = 0; i < cfg.population; ++i) {
      auto& chicken = swarm.chickens[static_cast<std::size_t>(i)];
      std::vector<double> candidate;
      switch (chicken.role) {
        case ChickenRole::Rooster: {
          double sigma2 = 1.0;
          if (swarm.roosters.size() > 1) {
            int pick = rooster_pick.uniform_index(
                static_cast<int>(swarm.roosters.size()) - 1);
            // Skip self within the rooster list.
            int self_pos = 0;
            for (std::size_t r = 0; r < swarm.roosters.size(); ++r)
              if (swarm.roosters[r] == i) self_pos = static_cast<int>(r);
            if (pick >= self_pos) ++pick;
            const int k = swarm.roosters[static_cast<std::size_t>(pick)];
            sigma2 = rooster_sigma2(
                chicken.fitness, swarm.chickens[static_cast<std::size_t>(k)].fitness,
                cfg.epsilon);
          }
          for (auto& g : gauss) g = rooster_noise.gaussian();
          candidate = rooster_move(chicken.position, sigma2, gauss);
          break;
        }
        case ChickenRole::Hen: {
          const int r1 = chicken.mate;
          // r2 from roosters+hens, distinct from self and r1.
          std::vector<int> others;
          others.reserve(swarm.roosters.size() + swarm.hens.size());
          for (int r : swarm.roosters)
            if (r != i && r != r1) others.push_back(r);
          for (int h : swarm.hens)
            if (h != i && h != r1) others.push_back(h);
          const auto& r1_chicken = swarm.chickens[static_cast<std::size_t>(r1)];
          const double s1 =
              hen_s1(chicken.fitness, r1_chicken.fitness, cfg.epsilon);
          double s2 = 0.0;
          std::span<const double> r2_pos = chicken.position;  // zero term fallback
          if (!others.empty()) {
            const int r2 = others[static_cast<std::size_t>(
                hen_pick.uniform_index(static_cast<int>(others.size())))];
            const auto& r2_chicken = swarm.chickens[static_cast<std::size_t>(r2)];
            s2 = hen_s2(chicken.fitness, r2_chicken.fitness);
            r2_pos = r2_chicken.position;
          }
          const double rand1 = hen_noise.uniform01();
          const double rand2 = hen_noise.uniform01();
          candidate = hen_move(chicken.position, r1_chicken.position, r2_pos, s1,
                               s2, rand1, rand2);
          break;
        }
        case ChickenRole::Chick: {
          const double fl = chick_noise.uniform(cfg.fl_min, cfg.fl_max);
          candidate = chick_move(
              chicken.position,
              swarm.chickens[static_cast<std::size_t>(chicken.mother)].position, fl);
          break;
        }
      }
      clamp_to_bounds(candidate, cfg.bounds);
      const double f = objective(candidate);
      // Greedy acceptance: keep the move only when it improves.
      if (f > chicken.fitness) {
        chicken.position = std::move(candidate);
        chicken.fitness = f;
        if (f > best.fitness) {
          best.fitness = f;
          best.position = chicken.position;
        }
      }
    }
    best.fitness_trace.push_back(best.fitness);
  }

  best.iterations_used = cfg.max_iterations;
  return best;
}

std::vector<int> decode_cluster_heads(std::span<const double> position,
                                      std::span<const int> alive_ids) {
  const int n = static_cast<int>(alive_ids.size());
  if (n == 0) throw std::invalid_argument("decode_cluster_heads: no alive nodes");
  const int k = static_cast<int>(position.size());
  if (n <= k) return std::vector<int>(alive_ids.begin(), alive_ids.end());

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(k));
  for (double coord : position) {
    const double clamped = std::clamp(coord, 0.0, static_cast<double>(n - 1));
    int rank = static_cast<int>(std::lround(clamped));
    while (used[static_cast<std::size_t>(rank)]) rank = (rank + 1) % n;
    used[static_cast<std::size_t>(rank)] = 1;
    picked.push_back(alive_ids[static_cast<std::size_t>(rank)]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace chsim
