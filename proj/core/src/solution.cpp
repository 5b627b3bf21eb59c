#include "chsim/solution.hpp"

#include <algorithm>

namespace chsim {

void clamp_to_bounds(std::vector<double>& position,
                     std::span<const Bounds> bounds) {
  for (std::size_t i = 0; i < position.size(); ++i) {
    position[i] = std::clamp(position[i], bounds[i].lo, bounds[i].hi);
  }
}

}  // namespace chsim
