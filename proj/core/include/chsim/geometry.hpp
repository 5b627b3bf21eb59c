#pragma once

#include <cmath>

namespace chsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct AreaSize {
  double width = 0.0;
  double height = 0.0;

  double diagonal() const { return std::hypot(width, height); }
};

}  // namespace chsim
