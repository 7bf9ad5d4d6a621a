#include "gtent/generators.hpp"

#include <cmath>

namespace gtent {

double uniform(Rng& rng, double lo, double hi) {
  // fixed mapping from raw bits, independent of the standard library's distributions
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

GridFunction tent_indicator(GridPtr grid, const Ball& b, double alpha, double beta, double amp) {
  return GridFunction::sample(
      std::move(grid),
      [&](const Point& y, double t) { return ball_tent_contains(b, alpha, beta, UpperPoint{y, t}) ? amp : 0.0; });
}

double bump_value(const BumpSpec& b, const Point& y, double t) {
  double ly = std::log(t / b.t0) / b.wl;
  double s2 = distance(y, b.center) * distance(y, b.center) / (b.wy * b.wy) + ly * ly;
  if (s2 >= 1.0) return 0.0;
  double u = 1.0 - s2;
  return b.amp * u * u * u;
}

GridFunction bump_sum(GridPtr grid, std::span<const BumpSpec> bumps) {
  return GridFunction::sample(
      std::move(grid),
      [&](const Point& y, double t) {
        double s = 0.0;
        for (const auto& b : bumps) s += bump_value(b, y, t);
        return s;
      },
      true);
}

GridFunction random_function(GridPtr grid, Rng& rng, const RandomSpec& spec) {
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t i = 0; i < grid->spatial_size(); ++i) {
    bool in_y = grid->node(i).norm() <= spec.y_max;
    for (std::size_t j = 0; j < grid->nt(); ++j) {
      double keep = uniform(rng, 0.0, 1.0), val = uniform(rng, -spec.amp, spec.amp);
      double t = grid->t(j);
      if (in_y && t >= spec.t_lo && t <= spec.t_hi && keep < spec.density) v[grid->index(i, j)] = val;
    }
  }
  return GridFunction(std::move(grid), std::move(v));
}

}  // namespace gtent
