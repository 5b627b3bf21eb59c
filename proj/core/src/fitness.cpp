#include "chsim/fitness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chsim {

void FitnessWeights::validate() const {
  const double w[5] = {energy, comm_cost, queuing_delay, link_quality,
                       centrality};
  double sum = 0.0;
  for (double wi : w) {
    if (!(wi >= 0.0 && wi <= 1.0))
      throw std::invalid_argument("fitness weights must lie in [0, 1]");
    sum += wi;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("fitness weights must sum to 1, got " +
                                std::to_string(sum));
}

}  // namespace chsim
