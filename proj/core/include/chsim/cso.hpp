#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chsim/rng.hpp"
#include "chsim/solution.hpp"

namespace chsim {

// Chicken-swarm optimizer (maximizing). The population is ranked by fitness
// into roosters (best), hens, and chicks (worst); the hierarchy is rebuilt
// every reorder_period iterations. Moves are greedy: a chicken keeps its new
// position only when the objective improves.
struct SwarmConfig {
  int population = 100;
  int rooster_count = 3;
  int hen_count = 5;
  int mother_count = -1;   // -1: same as hen_count
  int reorder_period = 10; // B
  int max_iterations = 150;
  double epsilon = 1e-9;   // denominator guard in the move factors
  double fl_min = 0.0;     // chick step factor range
  double fl_max = 2.0;
  // Alternative proportional role sizing (population fractions).
  bool use_fractions = false;
  double rooster_fraction = 0.15;
  double hen_fraction = 0.7;
  double mother_fraction = 0.5;  // of hens
  std::vector<Bounds> bounds;    // one entry per dimension
  std::uint64_t rng_seed = 1;

  int resolved_roosters() const;
  int resolved_hens() const;
  int resolved_mothers() const;
  int resolved_chicks() const;
  void validate() const;
};

enum class ChickenRole { Rooster, Hen, Chick };

struct Chicken {
  std::vector<double> position;
  double fitness = 0.0;
  ChickenRole role = ChickenRole::Hen;
  int mate = -1;    // hens: index of r1
  int mother = -1;  // chicks: index of the mother hen
};

struct Swarm {
  std::vector<Chicken> chickens;
  // Role index lists in rank order (best first within each role).
  std::vector<int> roosters;
  std::vector<int> hens;
  std::vector<int> chicks;
  std::vector<int> mothers;
};

// Uniform positions inside bounds, fitness evaluated, initial hierarchy built.
Swarm init_swarm(const SwarmConfig& cfg, const Objective& objective,
                 RngStream& init_stream, RngStream& partition_stream);

// Re-rank by fitness (ties keep index order) and reassign roles, mother hens,
// chick-mother links and hen mates.
void rank_and_partition(Swarm& swarm, const SwarmConfig& cfg,
                        RngStream& partition_stream);

// Move kernels, pure in the random draws so tests can pin them.
double rooster_sigma2(double f_i, double f_k, double epsilon);
double hen_s1(double f_i, double f_r1, double epsilon);
double hen_s2(double f_i, double f_r2);
std::vector<double> rooster_move(std::span<const double> pos, double sigma2,
                                 std::span<const double> gauss_draws);
std::vector<double> hen_move(std::span<const double> pos,
                             std::span<const double> r1_pos,
                             std::span<const double> r2_pos, double s1,
                             double s2, double rand1, double rand2);
std::vector<double> chick_move(std::span<const double> pos,
                               std::span<const double> mother_pos, double fl);

Solution cso_optimize(const Objective& objective, const SwarmConfig& cfg);

// Maps an optimizer position to a set of distinct node ids: each coordinate
// is clamped to [0, n-1], rounded to the nearest rank in `alive_ids`
// (ascending), and duplicates advance cyclically to the next unused rank.
// Fewer alive ids than coordinates selects all of them. Result is ascending.
std::vector<int> decode_cluster_heads(std::span<const double> position,
                                      std::span<const int> alive_ids);

}  // namespace chsim
