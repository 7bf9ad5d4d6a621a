#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "gtent/grid.hpp"

namespace gtent {

using Rng = std::mt19937_64;

// amp on the nodes of T^{alpha,beta}(B), zero elsewhere.
GridFunction tent_indicator(GridPtr grid, const Ball& b, double alpha, double beta, double amp = 1.0);

// Compactly supported bump amp (1 - s^2)^3, s^2 = |y - y0|^2/wy^2 + log(t/t0)^2/wl^2.
struct BumpSpec {
  Point center;
  double t0 = 0.3;
  double wy = 0.5;
  double wl = 1.0;
  double amp = 1.0;
};
double bump_value(const BumpSpec& b, const Point& y, double t);
GridFunction bump_sum(GridPtr grid, std::span<const BumpSpec> bumps);

// I.i.d. uniform values in [-amp, amp] on a random fraction of the nodes in
// the box |y| <= y_max, t in [t_lo, t_hi].
struct RandomSpec {
  double y_max = 4.0;
  double t_lo = 1e-3;
  double t_hi = 8.0;
  double density = 0.3;
  double amp = 1.0;
};
GridFunction random_function(GridPtr grid, Rng& rng, const RandomSpec& spec = {});

double uniform(Rng& rng, double lo, double hi);

}  // namespace gtent
