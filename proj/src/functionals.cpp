#include "gtent/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gtent/summation.hpp"

namespace gtent {

namespace {

double qpow(double a, double q) { return q == 1.0 ? a : std::pow(a, q); }
double qroot(double s, double q) { return q == 1.0 ? s : std::pow(s, 1.0 / q); }

std::size_t first_above(const std::vector<double>& alpha_t, double d) {
  auto it = std::partition_point(alpha_t.begin(), alpha_t.end(), [d](double at) { return !(at > d); });
  return static_cast<std::size_t>(it - alpha_t.begin());
}

std::vector<double> alpha_times_t(const HalfSpaceGrid& g, double alpha) {
  std::vector<double> a(g.nt());
  for (std::size_t j = 0; j < g.nt(); ++j) a[j] = alpha * g.t(j);
  return a;
}

// Per nonzero row i, suffix[j] = sum_{j' >= j} term(i, j'); the cone of x
// meets row i exactly in the suffix starting at first_above(|x - y_i|).
struct SuffixRows {
  std::vector<std::size_t> rows;
  std::vector<double> suffix;  // rows.size() x (nt + 1)
};

template <class Term>
SuffixRows build_suffix(const HalfSpaceGrid& g, Term term, bool take_max) {
  SuffixRows s;
  std::size_t nt = g.nt();
  std::vector<double> buf(nt + 1);
  for (std::size_t i = 0; i < g.spatial_size(); ++i) {
    buf[nt] = 0.0;
    bool any = false;
    for (std::size_t j = nt; j-- > 0;) {
      double v = term(i, j);
      any = any || v != 0.0;
      buf[j] = take_max ? std::max(buf[j + 1], v) : buf[j + 1] + v;
    }
    if (!any) continue;
    s.rows.push_back(i);
    s.suffix.insert(s.suffix.end(), buf.begin(), buf.end());
  }
  return s;
}

std::vector<double> gather(const ConeTable& T, const SuffixRows& s, bool take_max, Exec exec) {
  const auto& g = T.grid();
  std::size_t ns = g.spatial_size(), stride = g.nt() + 1;
  std::vector<double> out(ns, 0.0);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < ns; ++x) {
    CompensatedSum acc;
    double mx = 0.0;
    const Point& px = g.node(x);
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
      std::size_t i = s.rows[r];
      double d = distance(px, g.node(i));
      if (!(d < T.cap(i))) continue;
      std::size_t j0 = T.first_above(d);
      double v = s.suffix[r * stride + j0];
      if (take_max)
        mx = std::max(mx, v);
      else
        acc += v;
    }
    out[x] = take_max ? mx : acc.value();
  }
  return out;
}

void require_pencil(const ConeSpec& spec) {
  spec.validate();
  require(spec.variant == ConeVariant::Pencil, "area functions use the pencil cone");
}

}  // namespace

BallDictionary BallDictionary::graded(const HalfSpaceGrid& g, double level, std::size_t stride, int ladder) {
  require(level > 0.0 && stride >= 1 && ladder >= 1, "invalid dictionary parameters");
  BallDictionary d;
  std::size_t nx = g.axis(0).count, ny = g.dim() == 2 ? g.axis(1).count : 1;
  for (std::size_t ix = 0; ix < nx; ix += stride)
    for (std::size_t iy = 0; iy < ny; iy += stride) {
      const Point& c = g.node(g.flat(ix, iy));
      double r0 = cutoff_m_beta(c, level);
      for (int k = 0; k < ladder; ++k) d.balls.push_back(Ball{c, std::ldexp(r0, -k)});
    }
  return d;
}

bool BallDictionary::within(double level) const {
  return std::all_of(balls.begin(), balls.end(), [&](const Ball& b) { return is_admissible(b, level); });
}

std::vector<double> BallDictionary::distinct_radii() const {
  std::set<double> r;
  for (const auto& b : balls) r.insert(b.radius);
  return {r.begin(), r.end()};
}

void ExponentPair::validate(bool continuous_intent) const {
  require(p >= 1.0 && q >= 1.0, "tent-space exponents must be >= 1");
  if (std::isinf(p)) require(q > 1.0 && !std::isinf(q), "p = inf requires 1 < q < inf");
  if (std::isinf(q)) require(continuous_intent, "q = inf requires a continuous-intent function");
}

SpatialFunction area_S(const GridFunction& f, double q, const ConeSpec& spec, Exec exec) {
  require_pencil(spec);
  ConeTable T(f.grid_ptr(), spec.alpha, spec.beta, exec);
  return area_S(f, q, T, exec);
}

SpatialFunction area_S(const GridFunction& f, double q, const ConeTable& T, Exec exec) {
  require(q >= 1.0 && std::isfinite(q), "area function needs q in [1, inf)");
  require_same_grid(f.grid(), T.grid());
  const auto& g = f.grid();
  auto s = build_suffix(
      g,
      [&](std::size_t i, std::size_t j) {
        double a = std::abs(f(i, j));
        return a == 0.0 ? 0.0 : qpow(a, q) * g.weight(i, j) / T.denominator(i, j);
      },
      false);
  auto out = gather(T, s, false, exec);
  for (double& v : out) v = qroot(v, q);
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

SpatialFunction area_S_sup(const GridFunction& f, const ConeSpec& spec, Exec exec) {
  require_pencil(spec);
  require(f.continuous_intent(), "S_inf requires a continuous-intent function");
  ConeTable T(f.grid_ptr(), spec.alpha, spec.beta, exec);
  auto s = build_suffix(f.grid(), [&](std::size_t i, std::size_t j) { return std::abs(f(i, j)); }, true);
  return SpatialFunction(f.grid_ptr(), gather(T, s, true, exec));
}

SpatialFunction area_S_truncated(const GridFunction& f, double q, const ConeSpec& spec, double h, Exec exec) {
  require_pencil(spec);
  require(q >= 1.0 && std::isfinite(q), "area function needs q in [1, inf)");
  ConeTable T(f.grid_ptr(), spec.alpha, spec.beta, exec);
  const auto& g = f.grid();
  auto s = build_suffix(
      g,
      [&](std::size_t i, std::size_t j) {
        double a = std::abs(f(i, j));
        if (a == 0.0 || !(g.t(j) < h)) return 0.0;
        return qpow(a, q) * g.weight(i, j) / T.denominator(i, j);
      },
      false);
  auto out = gather(T, s, false, exec);
  for (double& v : out) v = qroot(v, q);
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

double tent_mass(const GridFunction& f, double q, double alpha, double beta, const Ball& b) {
  const auto& g = f.grid();
  auto at = alpha_times_t(g, alpha);
  double s = 0.0;
  std::array<std::size_t, 2> lo, hi;
  g.ball_index_box(b, lo, hi);
  for (std::size_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::size_t iy = lo[1]; iy <= hi[1]; ++iy) {
      std::size_t i = g.flat(ix, iy);
      double d = std::max(b.radius - distance(g.node(i), b.center), 0.0);
      if (d <= 0.0) continue;
      std::size_t n = d >= cutoff_m_beta(g.node(i), beta) ? g.nt() : first_above(at, d);
      auto row = f.row(i);
      for (std::size_t j = 0; j < n; ++j)
        if (row[j] != 0.0) s += qpow(std::abs(row[j]), q) * g.weight(i, j);
    }
  return s;
}

SpatialFunction carleson_C(const GridFunction& f, double q, double alpha, double beta, const BallDictionary& dict,
                           Exec exec) {
  require(!dict.balls.empty(), "Carleson functional needs a nonempty ball dictionary");
  require(q > 1.0 && std::isfinite(q), "Carleson functional needs q in (1, inf)");
  ConeSpec{alpha, beta}.validate();
  const auto& g = f.grid();
  std::size_t nb = dict.balls.size();
  std::vector<double> avg(nb, 0.0), reach(nb, 0.0);
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
  for (std::size_t k = 0; k < nb; ++k) {
    const Ball& b = dict.balls[k];
    reach[k] = std::min(alpha * b.radius, cutoff_m_beta(b.center, beta));
    double gam = grid_gamma(g, b);
    double mass = tent_mass(f, q, alpha, beta, b);
    avg[k] = gam > 0.0 ? qroot(mass / gam, q) : 0.0;
  }
  std::vector<double> out(g.spatial_size(), 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < out.size(); ++x) {
    double m = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      if (avg[k] > m && distance(g.node(x), dict.balls[k].center) < reach[k]) m = avg[k];
    out[x] = m;
  }
  return SpatialFunction(f.grid_ptr(), std::move(out));
}

double tent_norm(const GridFunction& f, ExponentPair pq, double alpha, double beta, const BallDictionary* dict) {
  pq.validate(f.continuous_intent());
  ConeSpec spec{alpha, beta};
  if (std::isinf(pq.p)) {
    if (dict) return lp_gamma_norm(carleson_C(f, pq.q, alpha, beta, *dict), kInf);
    auto d = BallDictionary::graded(f.grid(), beta);
    return lp_gamma_norm(carleson_C(f, pq.q, alpha, beta, d), kInf);
  }
  if (std::isinf(pq.q)) return lp_gamma_norm(area_S_sup(f, spec), pq.p);
  return lp_gamma_norm(area_S(f, pq.q, spec), pq.p);
}

namespace {

double ball_average(const SpatialFunction& g, const Ball& b) {
  const auto& grid = g.grid();
  double num = 0.0, den = 0.0;
  std::array<std::size_t, 2> lo, hi;
  grid.ball_index_box(b, lo, hi);
  for (std::size_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::size_t iy = lo[1]; iy <= hi[1]; ++iy) {
      std::size_t i = grid.flat(ix, iy);
      if (!(distance(grid.node(i), b.center) < b.radius)) continue;
      num += std::abs(g[i]) * grid.spatial_weight(i);
      den += grid.spatial_weight(i);
    }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

SpatialFunction maximal_noncentered(const SpatialFunction& g, double lambda, const BallDictionary& dict, Exec exec) {
  require(lambda > 0.0, "maximal function level must be positive");
  const auto& grid = g.grid();
  std::vector<Ball> balls;
  for (const auto& b : dict.balls)
    if (is_admissible(b, lambda)) balls.push_back(b);
  std::vector<double> avg(balls.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
  for (std::size_t k = 0; k < balls.size(); ++k) avg[k] = ball_average(g, balls[k]);
  std::vector<double> out(grid.spatial_size(), 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < out.size(); ++x) {
    double m = 0.0;
    for (std::size_t k = 0; k < balls.size(); ++k)
      if (avg[k] > m && distance(grid.node(x), balls[k].center) < balls[k].radius) m = avg[k];
    out[x] = m;
  }
  return SpatialFunction(g.grid_ptr(), std::move(out));
}

SpatialFunction maximal_centered(const SpatialFunction& g, double lambda, Exec exec) {
  require(lambda > 0.0, "maximal function level must be positive");
  const auto& grid = g.grid();
  double tiny = 0.5 * grid.cell();
  std::vector<double> out(grid.spatial_size(), 0.0);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < out.size(); ++x) {
    double m = 0.0;
    for (double r = cutoff_m_beta(grid.node(x), lambda);; r *= 0.5) {
      m = std::max(m, ball_average(g, Ball{grid.node(x), r}));
      if (r < tiny) break;
    }
    out[x] = m;
  }
  return SpatialFunction(g.grid_ptr(), std::move(out));
}

SpatialFunction stopping_time(const GridFunction& gfun, double qprime, const ConeSpec& spec, double M_const,
                              std::span<const double> h_ladder, const SpatialFunction& carleson, Exec exec) {
  require(!h_ladder.empty(), "stopping time needs a nonempty h ladder");
  require(qprime >= 1.0 && std::isfinite(qprime), "stopping time needs q' in [1, inf)");
  require(M_const > 0.0, "stopping-time constant must be positive");
  require_pencil(spec);
  require_same_grid(gfun.grid(), carleson.grid());
  const auto& g = gfun.grid();
  std::vector<double> ladder(h_ladder.begin(), h_ladder.end());
  std::sort(ladder.begin(), ladder.end());
  ConeTable T(gfun.grid_ptr(), spec.alpha, spec.beta, exec);

  // term(i, j) and the nonzero rows
  std::size_t nt = g.nt();
  std::vector<std::size_t> rows;
  std::vector<double> terms;
  for (std::size_t i = 0; i < g.spatial_size(); ++i) {
    auto row = gfun.row(i);
    if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) continue;
    rows.push_back(i);
    for (std::size_t j = 0; j < nt; ++j) {
      double a = std::abs(row[j]);
      terms.push_back(a == 0.0 ? 0.0 : qpow(a, qprime) * g.weight(i, j) / T.denominator(i, j));
    }
  }
  // number of t nodes strictly below each ladder value
  std::vector<std::size_t> below(ladder.size());
  for (std::size_t l = 0; l < ladder.size(); ++l)
    below[l] = static_cast<std::size_t>(std::lower_bound(g.ts().begin(), g.ts().end(), ladder[l]) - g.ts().begin());

  std::vector<double> out(g.spatial_size(), 0.0);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < out.size(); ++x) {
    std::vector<double> level(nt, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t i = rows[r];
      double d = distance(g.node(x), g.node(i));
      if (!(d < T.cap(i))) continue;
      for (std::size_t j = T.first_above(d); j < nt; ++j) level[j] += terms[r * nt + j];
    }
    double thr = qpow(M_const * carleson[x], qprime);
    double cum = 0.0;
    std::size_t j = 0;
    double h = 0.0;
    bool all = true;
    for (std::size_t l = 0; l < ladder.size(); ++l) {
      for (; j < below[l]; ++j) cum += level[j];
      if (cum <= thr)
        h = ladder[l];
      else {
        all = false;
        break;
      }
    }
    out[x] = all ? kInf : h;
  }
  return SpatialFunction(gfun.grid_ptr(), std::move(out));
}

IndependenceSweep independence_sweep(const GridFunction& f, ExponentPair pq, std::span<const double> alphas,
                                     std::span<const double> betas) {
  IndependenceSweep s;
  for (double a : alphas)
    for (double b : betas) {
      s.params.push_back(ConeSpec{a, b});
      s.norms.push_back(tent_norm(f, pq, a, b));
    }
  std::size_t n = s.norms.size();
  s.ratios.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (s.norms[a] == 0.0 && s.norms[b] == 0.0) continue;
      s.ratios[a][b] = s.norms[b] == 0.0 ? kInf : s.norms[a] / s.norms[b];
    }
  auto [mn, mx] = std::minmax_element(s.norms.begin(), s.norms.end());
  s.max_min = *mx == 0.0 ? 1.0 : (*mn == 0.0 ? kInf : *mx / *mn);
  return s;
}

}  // namespace gtent
