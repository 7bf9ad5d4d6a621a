#include "gtent/reference.hpp"

#include <algorithm>
#include <cmath>

namespace gtent::reference {

SpatialFunction area_S(const GridFunction& f, double q, const ConeSpec& spec) {
  const auto& g = f.grid();
  std::vector<double> out(g.spatial_size(), 0.0);
  for (std::size_t x = 0; x < out.size(); ++x) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.spatial_size(); ++i)
      for (std::size_t j = 0; j < g.nt(); ++j) {
        UpperPoint p{g.node(i), g.t(j)};
        if (f(i, j) == 0.0 || !cone_contains(g.node(x), spec, p)) continue;
        double r = std::min(spec.alpha * p.t, cutoff_m_beta(p.y, spec.beta));
        s += std::pow(std::abs(f(i, j)), q) * g.weight(i, j) / grid_gamma(g, Ball{p.y, r});
      }
    out[x] = std::pow(s, 1.0 / q);
  }
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

SpatialFunction area_S_sup(const GridFunction& f, const ConeSpec& spec) {
  const auto& g = f.grid();
  std::vector<double> out(g.spatial_size(), 0.0);
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t i = 0; i < g.spatial_size(); ++i)
      for (std::size_t j = 0; j < g.nt(); ++j)
        if (cone_contains(g.node(x), spec, UpperPoint{g.node(i), g.t(j)}))
          out[x] = std::max(out[x], std::abs(f(i, j)));
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

SpatialFunction carleson_C(const GridFunction& f, double q, double alpha, double beta, const BallDictionary& dict) {
  const auto& g = f.grid();
  std::vector<double> out(g.spatial_size(), 0.0);
  for (const auto& b : dict.balls) {
    double mass = 0.0;
    for (std::size_t i = 0; i < g.spatial_size(); ++i)
      for (std::size_t j = 0; j < g.nt(); ++j)
        if (f(i, j) != 0.0 && ball_tent_contains(b, alpha, beta, UpperPoint{g.node(i), g.t(j)}))
          mass += std::pow(std::abs(f(i, j)), q) * g.weight(i, j);
    double gam = grid_gamma(g, b);
    double avg = gam > 0.0 ? std::pow(mass / gam, 1.0 / q) : 0.0;
    double reach = std::min(alpha * b.radius, cutoff_m_beta(b.center, beta));
    for (std::size_t x = 0; x < out.size(); ++x)
      if (distance(g.node(x), b.center) < reach) out[x] = std::max(out[x], avg);
  }
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

}  // namespace gtent::reference
