#pragma once

#include <cmath>
#include <vector>

#include "gtent/geometry.hpp"

namespace gtent {

struct WeightedPoint {
  UpperPoint p;
  double w = 0.0;
};

// Finite signed measure on the upper half-space.
struct DiscreteMeasure {
  std::vector<WeightedPoint> points;

  double total_variation() const {
    double s = 0.0;
    for (const auto& q : points) s += std::abs(q.w);
    return s;
  }
  DiscreteMeasure scaled(double c) const {
    DiscreteMeasure m{points};
    for (auto& q : m.points) q.w *= c;
    return m;
  }
};

}  // namespace gtent
