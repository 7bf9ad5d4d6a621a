#include "gtent/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "gtent/summation.hpp"

namespace gtent {

namespace {

double bump(double x) { return std::exp(-1.0 / (1.0 - x * x)); }

}  // namespace

double MotherFunction::operator()(double x) const {
  double a = std::abs(x);
  if (a >= 1.0) return 0.0;
  double v = c * a * bump(a);
  return x < 0.0 ? -v : v;  // exact oddness
}

double MotherFunction::derivative(double x) const {
  double s = 1.0 - x * x;
  if (s <= 0.0) return 0.0;
  return c * bump(x) * (1.0 - 2.0 * x * x / (s * s));
}

MotherFunction default_phi() {
  MotherFunction phi;
  double xs = (std::sqrt(6.0) - std::sqrt(2.0)) / 2.0;  // root of phi'
  phi.c = 1.0 / (xs * bump(xs));
  double m = 1.0;
  constexpr int kSamples = 20000;
  for (int i = 0; i <= kSamples; ++i) m = std::max(m, std::abs(phi.derivative(-1.0 + 2.0 * i / kSamples)));
  phi.M = m;
  return phi;
}

SpatialFunction pi_phi(const GridFunction& f, const MotherFunction& phi, EmbedOptions opts) {
  const auto& g = f.grid();
  require(g.dim() == 1, "pi_phi is implemented for n = 1");
  struct Term {
    double y, t, coef;
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < g.spatial_size(); ++i) {
    double y = g.node(i)[0];
    for (std::size_t j = 0; j < g.nt(); ++j) {
      double v = f(i, j), t = g.t(j);
      if (v == 0.0) continue;
      if (!opts.drop_local_truncation && !(t < 1.0 && t < cutoff_m(g.node(i)))) continue;
      terms.push_back({y, t, v * g.lebesgue_weight(i) * g.t_weight(j) / t});
    }
  }
  std::vector<double> out(g.spatial_size(), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < out.size(); ++i) {
    double x = g.node(i)[0];
    CompensatedSum s;
    for (const auto& tm : terms) {
      double dx = x - tm.y;
      if (!(std::abs(dx) < tm.t)) continue;
      // e^{x^2 - y^2} folded in to keep intermediates bounded
      s += tm.coef * phi(dx / tm.t) * std::exp(dx * (x + tm.y));
    }
    out[i] = s.value();
  }
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

H1AtomReport check_h1_atom(const Atom& a, const MotherFunction& phi, EmbedOptions opts) {
  require(a.grid != nullptr, "atom has no grid");
  const auto& g = *a.grid;
  auto u = pi_phi(a.dense(), phi, opts);
  H1AtomReport r;
  r.support_radius = 2.0 * a.ball.radius + g.cell();
  CompensatedSum mean, l1, l2;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double w = g.spatial_weight(i);
    if (u[i] != 0.0 && distance(g.node(i), a.ball.center) >= r.support_radius) ++r.support_violations;
    mean += u[i] * w;
    l1 += std::abs(u[i]) * w;
    l2 += u[i] * u[i] * w;
  }
  r.support_ok = r.support_violations == 0;
  r.mean = mean.value();
  r.l1 = l1.value();
  r.l2 = std::sqrt(l2.value());
  r.vacuous = r.l1 == 0.0;
  r.mean_ok = r.vacuous ? std::abs(r.mean) <= 1e-12 : std::abs(r.mean) <= kMeanTolerance * r.l1;
  r.l2_constant = r.l2 * std::sqrt(grid_gamma(g, a.ball));
  return r;
}

}  // namespace gtent
