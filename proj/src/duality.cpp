#include "gtent/duality.hpp"

#include <algorithm>
#include <cmath>

#include "gtent/summation.hpp"

namespace gtent {

namespace {

double conjugate(double q) { return q / (q - 1.0); }

double ratio_or_inf(double num, double den) {
  if (num == 0.0) return 0.0;
  return den > 0.0 ? num / den : kInf;
}

std::size_t nearest_flat(const HalfSpaceGrid& g, const UpperPoint& p) {
  require(p.y.dim() == g.dim(), "measure point dimension differs from the grid");
  require(g.inside_box(p.y) && p.t >= g.t_min() && p.t <= g.t_max(), "measure point lies outside the grid box");
  return g.index(g.nearest_node(p.y), g.nearest_t(p.t));
}

}  // namespace

double pairing(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  return halfspace_integral(f * g);
}

double measure_pairing(const DiscreteMeasure& mu, const GridFunction& f) {
  CompensatedSum s;
  for (const auto& q : mu.points) s += q.w * f.at(nearest_flat(f.grid(), q.p));
  return s.value();
}

CarlesonReport carleson_norm(const DiscreteMeasure& mu, const HalfSpaceGrid& grid, double alpha, double beta,
                             double delta, const BallDictionary& dict) {
  require(!dict.balls.empty(), "Carleson norm needs a nonempty ball dictionary");
  require(dict.within(delta), "dictionary balls must be admissible at level delta");
  ConeSpec{alpha, beta}.validate();
  CarlesonReport r;
  r.per_ball.assign(dict.balls.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t k = 0; k < dict.balls.size(); ++k) {
    const Ball& b = dict.balls[k];
    CompensatedSum s;
    for (const auto& q : mu.points)
      if (q.w != 0.0 && ball_tent_contains(b, alpha, beta, q.p)) s += std::abs(q.w);
    r.per_ball[k] = ratio_or_inf(s.value(), grid_gamma(grid, b));
  }
  r.witness = dict.balls.front();
  for (std::size_t k = 0; k < dict.balls.size(); ++k)
    if (r.per_ball[k] > r.norm) {
      r.norm = r.per_ball[k];
      r.witness = dict.balls[k];
    }
  return r;
}

CarlesonPairingReport check_carleson_pairing(const DiscreteMeasure& mu, const GridFunction& f, double alpha,
                                             double beta, double delta, const BallDictionary& dict) {
  require(f.continuous_intent(), "the q = inf pairing requires a continuous-intent function");
  CarlesonPairingReport r;
  CompensatedSum s;
  for (const auto& q : mu.points) s += std::abs(q.w) * std::abs(f.at(nearest_flat(f.grid(), q.p)));
  r.lhs = s.value();
  r.carleson = carleson_norm(mu, f.grid(), alpha, beta, delta, dict).norm;
  r.tent = lp_gamma_norm(area_S_sup(f, ConeSpec{alpha, beta}), 1.0);
  r.constant = ratio_or_inf(r.lhs, r.carleson * r.tent);
  r.finite = std::isfinite(r.constant);
  return r;
}

StoppingReport stopping_density(const GridFunction& g, double qprime, const ConeSpec& spec,
                                const BallDictionary& dict) {
  require(!dict.balls.empty(), "stopping time needs a nonempty ball dictionary");
  require(qprime > 1.0 && std::isfinite(qprime), "stopping time needs q' in (1, inf)");
  const auto& grid = g.grid();
  StoppingReport r;
  double kappa = 2.0 * (spec.beta + 1.0) * (spec.beta + 1.0) + 1.0;
  std::vector<Ball> inner(dict.balls.size());
  std::vector<double> inner_gamma(dict.balls.size());
  r.K_beta = 1.0;
  for (std::size_t k = 0; k < dict.balls.size(); ++k) {
    const Ball& b = dict.balls[k];
    inner[k] = Ball{b.center, std::min(spec.alpha * b.radius, cutoff_m_beta(b.center, spec.beta))};
    inner_gamma[k] = grid_gamma(grid, inner[k]);
    if (inner_gamma[k] > 0.0)
      r.K_beta = std::max(r.K_beta, grid_gamma(grid, scaled(inner[k], kappa)) / inner_gamma[k]);
  }
  r.M = 2.0 * std::pow(r.K_beta, 1.0 / qprime);
  r.lambda_theory = 1.0 - r.K_beta / std::pow(r.M, qprime);
  auto C = carleson_C(g, qprime, spec.alpha, spec.beta, dict);
  auto radii = dict.distinct_radii();
  auto h = stopping_time(g, qprime, spec, r.M, radii, C);
  r.h.assign(h.values().begin(), h.values().end());
  r.lambda_M = kInf;
  for (std::size_t k = 0; k < dict.balls.size(); ++k) {
    if (inner_gamma[k] <= 0.0) continue;
    double good = 0.0, rb = dict.balls[k].radius;
    grid.for_each_in_ball(inner[k], [&](std::size_t i) {
      if (h[i] >= rb) good += grid.spatial_weight(i);
    });
    double dens = good / inner_gamma[k];
    if (dens < r.lambda_M) {
      r.lambda_M = dens;
      r.worst = dict.balls[k];
    }
  }
  return r;
}

DualityOneQReport check_duality_1q(const GridFunction& f, const GridFunction& g, double q, const ConeSpec& spec,
                                   const BallDictionary& dict) {
  require_same_grid(f.grid(), g.grid());
  require(q > 1.0 && std::isfinite(q), "duality check needs q in (1, inf)");
  double qp = conjugate(q);
  DualityOneQReport r;
  r.lhs = halfspace_integral(f.abs() * g.abs());
  auto S = area_S(f, q, spec);
  auto C = carleson_C(g, qp, spec.alpha, spec.beta, dict);
  r.rhs = lp_gamma_norm(S * C, 1.0);
  r.constant = ratio_or_inf(r.lhs, r.rhs);
  r.finite = std::isfinite(r.constant);
  r.stopping = stopping_density(g, qp, spec, dict);
  return r;
}

DualityPqReport check_duality_pq(const GridFunction& f, const GridFunction& g, double p, double q,
                                 const ConeSpec& spec) {
  require_same_grid(f.grid(), g.grid());
  require(p > 1.0 && std::isfinite(p) && q > 1.0 && std::isfinite(q), "duality check needs p, q in (1, inf)");
  double pp = conjugate(p), qp = conjugate(q);
  DualityPqReport r;
  auto fg = f.abs() * g.abs();
  r.lhs = halfspace_integral(fg);
  r.fubini = lp_gamma_norm(area_S(fg, 1.0, spec), 1.0);
  r.middle = lp_gamma_norm(area_S(f, q, spec) * area_S(g, qp, spec), 1.0);
  r.rhs = lp_gamma_norm(area_S(f, q, spec), p) * lp_gamma_norm(area_S(g, qp, spec), pp);
  double scale = std::max(r.lhs, 1e-300);
  r.fubini_ok = std::abs(r.fubini - r.lhs) <= kFubiniTolerance * scale;
  r.area_ok = r.lhs <= r.middle * (1.0 + kDualitySlack);
  r.holder_ok = r.middle <= r.rhs * (1.0 + kDualitySlack);
  return r;
}

}  // namespace gtent
