#include "chsim/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chsim/rng.hpp"

namespace chsim {

void PsoConfig::validate() const {
  if (population < 2) throw std::invalid_argument("pso.population must be >= 2");
  if (max_iterations < 1)
    throw std::invalid_argument("pso.max_iterations must be >= 1");
  if (!(inertia >= 0.0 && inertia < 1.5))
    throw std::invalid_argument("pso.inertia must lie in [0, 1.5)");
  if (cognitive < 0.0 || social < 0.0)
    throw std::invalid_argument("pso acceleration coefficients must be >= 0");
  if (!(velocity_clamp_fraction > 0.0 && velocity_clamp_fraction <= 1.0))
    throw std::invalid_argument("pso.velocity_clamp_fraction must be in (0, 1]");
  if (bounds.empty()) throw std::invalid_argument("pso.bounds must be non-empty");
  for (const auto& b : bounds)
    if (!(b.lo <= b.hi)) throw std::invalid_argument("pso: bounds must have lo <= hi");
}

Solution pso_optimize(const Objective& objective, const PsoConfig& cfg) {
  cfg.validate();
  const std::size_t dims = cfg.bounds.size();
  auto init_stream = RngStream::derived(cfg.rng_seed, stream::kPsoInit);
  auto velocity_stream = RngStream::derived(cfg.rng_seed, stream::kPsoVelocity);

  std::vector<double> vmax(dims);
  for (std::size_t d = 0; d < dims; ++d)
    vmax[d] = cfg.velocity_clamp_fraction * (cfg.bounds[d].hi - cfg.bounds[d].lo);

  struct Particle {
    std::vector<double> pos, vel, best_pos;
    double fitness, best_fitness;
  };
  std::vector<Particle> particles(static_cast<std::size_t>(cfg.population));

  Solution best;
  best.fitness = -std::numeric_limits<double>::infinity();
  for (auto& p : particles) {
    p.pos.resize(dims);
    p.vel.assign(dims, 0.0);
    for (std::size_t d = 0; d < dims; ++d)
      p.pos[d] = init_stream.uniform(cfg.bounds[d].lo, cfg.bounds[d].hi);
    p.fitness = objective(p.pos);
    p.best_pos = p.pos;
    p.best_fitness = p.fitness;
    if (p.fitness > best.fitness) {
      best.fitness = p.fitness;
      best.position = p.pos;
    }
  }

  best.fitness_trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
  for (int t = 0; t < cfg.max_iterations; ++t) {
    for (auto& p : particles) {
      // One r1/r2 pair per particle per update, as in the original gbest
      // formulation.
      const double r1 = velocity_stream.uniform01();
      const double r2 = velocity_stream.uniform01();
      for (std::size_t d = 0; d < dims; ++d) {
        double v = cfg.inertia * p.vel[d] +
                   cfg.cognitive * r1 * (p.best_pos[d] - p.pos[d]) +
                   cfg.social * r2 * (best.position[d] - p.pos[d]);
        v = std::clamp(v, -vmax[d], vmax[d]);
        p.vel[d] = v;
        p.pos[d] = std::clamp(p.pos[d] + v, cfg.bounds[d].lo, cfg.bounds[d].hi);
      }
      p.fitness = objective(p.pos);
      if (p.fitness > p.best_fitness) {
        p.best_fitness = p.fitness;
        p.best_pos = p.pos;
      }
      if (p.fitness > best.fitness) {
        best.fitness = p.fitness;
        best.position = p.pos;
      }
    }
    best.fitness_trace.push_back(best.fitness);
  }

  best.iterations_used = cfg.max_iterations;
  return best;
}

}  // namespace chsim
