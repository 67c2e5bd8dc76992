#pragma once

#include <cmath>

namespace nirenberg {

// Value with a symmetric error bar.
struct Interval {
  double center = 0.0;
  double halfwidth = 0.0;
  double lo() const { return center - halfwidth; }
  double hi() const { return center + halfwidth; }
  bool contains(double x) const { return std::abs(x - center) <= halfwidth; }
};

}  // namespace nirenberg
