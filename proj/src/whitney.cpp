#include "gtent/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtent/distance.hpp"
#include "gtent/summation.hpp"

namespace gtent {

double DyadicCube::side() const { return std::ldexp(1.0, -level); }
double DyadicCube::diam() const { return side() * std::sqrt(static_cast<double>(dim)); }
double DyadicCube::lo(const HalfSpaceGrid& g, int a) const {
  return g.axis(a).lo + static_cast<double>(index[static_cast<std::size_t>(a)]) * side();
}
double DyadicCube::hi(const HalfSpaceGrid& g, int a) const { return lo(g, a) + side(); }

Point DyadicCube::center(const HalfSpaceGrid& g) const {
  double h = 0.5 * side();
  if (dim == 1) return Point(lo(g, 0) + h);
  return Point(lo(g, 0) + h, lo(g, 1) + h);
}

bool DyadicCube::contains(const HalfSpaceGrid& g, const Point& y) const {
  for (int a = 0; a < dim; ++a)
    if (y[a] < lo(g, a) || y[a] >= hi(g, a)) return false;
  return true;
}

std::vector<std::int64_t> WhitneyCover::owner() const {
  std::vector<std::int64_t> own(target.grid().spatial_size(), -1);
  for (std::size_t c = 0; c < nodes.size(); ++c)
    for (std::size_t i : nodes[c]) own[i] = static_cast<std::int64_t>(c);
  return own;
}

namespace {

// Sums gamma(A cap B) and gamma(B) on the grid.
std::pair<double, double> masked_ball(const RegionMask& A, const Ball& b) {
  const auto& g = A.grid();
  double in = 0.0, all = 0.0;
  std::array<std::size_t, 2> lo, hi;
  g.ball_index_box(b, lo, hi);
  for (std::size_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::size_t iy = lo[1]; iy <= hi[1]; ++iy) {
      std::size_t i = g.flat(ix, iy);
      if (!(distance(g.node(i), b.center) < b.radius)) continue;
      all += g.spatial_weight(i);
      if (A[i]) in += g.spatial_weight(i);
    }
  return {in, all};
}

bool centered_ladder_ok(const RegionMask& A, std::size_t x, double eta, double lambda) {
  const auto& g = A.grid();
  double tiny = 0.5 * g.cell();
  for (double r = cutoff_m_beta(g.node(x), lambda);; r *= 0.5) {
    auto [in, all] = masked_ball(A, Ball{g.node(x), r});
    if (all > 0.0 && in < eta * all) return false;
    if (r < tiny) return true;
  }
}

void require_spatial(const RegionMask& m) {
  require(m.kind() == MaskKind::Spatial, "covering operations need a spatial mask");
}

}  // namespace

RegionMask density_points(const RegionMask& A, double eta, double lambda, Exec exec) {
  require_spatial(A);
  require(eta > 0.0 && eta < 1.0 && lambda > 0.0, "density points need eta in (0,1) and lambda > 0");
  std::vector<std::uint8_t> out(A.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = centered_ladder_ok(A, x, eta, lambda) ? 1 : 0;
  return RegionMask(A.grid_ptr(), MaskKind::Spatial, std::move(out));
}

RegionMask density_points_containing(const RegionMask& F, double eta, double lambda, const BallDictionary& dict,
                                     Exec exec) {
  require_spatial(F);
  require(eta > 0.0 && eta < 1.0 && lambda > 0.0, "density points need eta in (0,1) and lambda > 0");
  const auto& g = F.grid();
  std::vector<Ball> balls;
  for (const auto& b : dict.balls)
    if (is_admissible(b, lambda)) balls.push_back(b);
  std::vector<std::uint8_t> bad(balls.size(), 0);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
  for (std::size_t k = 0; k < balls.size(); ++k) {
    auto [in, all] = masked_ball(F, balls[k]);
    bad[k] = all > 0.0 && in < eta * all;
  }
  std::vector<std::uint8_t> out(F.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
  for (std::size_t x = 0; x < out.size(); ++x) {
    bool ok = centered_ladder_ok(F, x, eta, lambda);
    for (std::size_t k = 0; ok && k < balls.size(); ++k)
      if (bad[k] && distance(g.node(x), balls[k].center) < balls[k].radius) ok = false;
    out[x] = ok ? 1 : 0;
  }
  return RegionMask(F.grid_ptr(), MaskKind::Spatial, std::move(out));
}

bool is_admissible_whitney(const RegionMask& W, double lambda, double tolerance) {
  require_spatial(W);
  const auto& g = W.grid();
  double tol = tolerance < 0.0 ? g.cell() : tolerance;
  auto d = complement_distance(W);
  for (std::size_t i = 0; i < W.size(); ++i)
    if (W[i] && d[i] > cutoff_m_beta(g.node(i), lambda) + tol) return false;
  return true;
}

RegionMask plus_C(const RegionMask& A, double lambda) {
  require_spatial(A);
  require(lambda > 0.0, "plus_C needs lambda > 0");
  const auto& g = A.grid();
  auto d = distance_to_nodes(g, A.bits());
  std::vector<std::uint8_t> b(A.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = d[i] < cutoff_m_beta(g.node(i), lambda);
  return RegionMask(A.grid_ptr(), MaskKind::Spatial, std::move(b));
}

namespace {

// Distance from the closed box of Q to the complement: complement nodes and
// the region beyond the spatial box.
class ComplementIndex {
 public:
  explicit ComplementIndex(const RegionMask& O) : g_(O.grid()) {
    for (std::size_t i = 0; i < O.size(); ++i)
      if (!O[i]) pts_.push_back(i);
  }

  double dist(const DyadicCube& q) const {
    double d = kInf;
    for (int a = 0; a < g_.dim(); ++a) {
      double lo = q.lo(g_, a), hi = q.hi(g_, a);
      if (lo < g_.axis(a).lo || hi > g_.axis(a).hi) return 0.0;
      d = std::min({d, lo - g_.axis(a).lo, g_.axis(a).hi - hi});
    }
    if (g_.dim() == 1) {
      // pts_ are sorted by coordinate in 1-D
      double lo = q.lo(g_, 0), hi = q.hi(g_, 0);
      auto it = std::lower_bound(pts_.begin(), pts_.end(), lo,
                                 [&](std::size_t i, double v) { return g_.node(i)[0] < v; });
      if (it != pts_.end()) d = std::min(d, std::max(g_.node(*it)[0] - hi, 0.0));
      if (it != pts_.begin()) d = std::min(d, lo - g_.node(*std::prev(it))[0]);
      return d;
    }
    for (std::size_t i : pts_) {
      double s = 0.0;
      for (int a = 0; a < 2; ++a) {
        double z = g_.node(i)[a];
        double e = std::max({q.lo(g_, a) - z, 0.0, z - q.hi(g_, a)});
        s += e * e;
      }
      d = std::min(d, std::sqrt(s));
    }
    return d;
  }

 private:
  const HalfSpaceGrid& g_;
  std::vector<std::size_t> pts_;
};

// Node index range [first, last) along an axis with lo <= x < hi.
std::pair<std::size_t, std::size_t> node_range(const Axis& ax, double lo, double hi) {
  double h = ax.spacing();
  auto clampi = [&](double s) {
    return static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(ax.count)));
  };
  std::size_t a = clampi(std::ceil((lo - ax.lo) / h) - 1.0);
  while (a < ax.count && ax.node(a) < lo) ++a;
  std::size_t b = clampi(std::ceil((hi - ax.lo) / h) + 1.0);
  while (b > a && ax.node(b - 1) >= hi) --b;
  return {a, b};
}

}  // namespace

WhitneyCover whitney_cubes(const RegionMask& O) {
  require_spatial(O);
  const auto& g = O.grid();
  WhitneyCover cover(O);
  cover.cube_audit.tolerance = g.cell();
  ComplementIndex comp(O);

  double L = 0.0;
  for (int a = 0; a < g.dim(); ++a) L = std::max(L, g.axis(a).hi - g.axis(a).lo);
  int root = -(static_cast<int>(std::floor(std::log2(L))) + 1);
  double min_side = g.cell() / 8.0;

  std::vector<DyadicCube> stack{DyadicCube{root, {0, 0}, g.dim()}};
  std::vector<std::uint8_t> claimed(O.size(), 0);
  while (!stack.empty()) {
    DyadicCube q = stack.back();
    stack.pop_back();
    std::array<std::pair<std::size_t, std::size_t>, 2> rng{{{0, 1}, {0, 1}}};
    for (int a = 0; a < g.dim(); ++a) rng[static_cast<std::size_t>(a)] = node_range(g.axis(a), q.lo(g, a), q.hi(g, a));
    std::vector<std::size_t> inside;
    for (std::size_t ix = rng[0].first; ix < rng[0].second; ++ix)
      for (std::size_t iy = rng[1].first; iy < rng[1].second; ++iy) {
        std::size_t i = g.flat(ix, iy);
        if (O[i]) inside.push_back(i);
      }
    if (inside.empty()) continue;
    double d = comp.dist(q);
    if (q.diam() <= d) {
      for (std::size_t i : inside) {
        if (claimed[i]) cover.cube_audit.disjoint_ok = false;
        claimed[i] = 1;
      }
      cover.cubes.push_back(q);
      cover.cube_dist.push_back(d);
      cover.nodes.push_back(std::move(inside));
      continue;
    }
    if (q.side() / 2.0 < min_side) continue;
    int n = 1 << g.dim();
    for (int c = n; c-- > 0;) {
      DyadicCube ch{q.level + 1, {2 * q.index[0] + (c & 1), g.dim() == 2 ? 2 * q.index[1] + ((c >> 1) & 1) : 0}, g.dim()};
      stack.push_back(ch);
    }
  }
  // deterministic order: by level, then index
  std::vector<std::size_t> ord(cover.cubes.size());
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
    const auto &x = cover.cubes[a], &y = cover.cubes[b];
    return std::tie(x.level, x.index) < std::tie(y.level, y.index);
  });
  WhitneyCover sorted(O);
  sorted.cube_audit = cover.cube_audit;
  for (std::size_t k : ord) {
    sorted.cubes.push_back(cover.cubes[k]);
    sorted.cube_dist.push_back(cover.cube_dist[k]);
    sorted.nodes.push_back(std::move(cover.nodes[k]));
  }
  for (std::size_t c = 0; c < sorted.cubes.size(); ++c) {
    double dm = sorted.cubes[c].diam(), d = sorted.cube_dist[c];
    if (!(dm <= d && d <= 4.0 * dm)) sorted.cube_audit.bracket_ok = false;
  }
  for (std::size_t i = 0; i < O.size(); ++i) {
    if (O[i] && !claimed[i]) ++sorted.cube_audit.uncovered;
    if (!O[i] && claimed[i]) ++sorted.cube_audit.outside_target;
  }
  return sorted;
}

WhitneyCover whitney_balls(const RegionMask& O, double c_overlap) {
  require_spatial(O);
  require(c_overlap > 2.0, "ball cover needs C_overlap > 2");
  const auto& g = O.grid();
  auto dist = complement_distance(O);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < O.size(); ++i)
    if (O[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });

  WhitneyCover cover(O);
  cover.c_overlap = c_overlap;
  std::vector<std::uint8_t> covered(O.size(), 0);
  std::vector<std::size_t> overlap(O.size(), 0);
  for (std::size_t x : order) {
    if (covered[x]) continue;
    Ball b{g.node(x), dist[x] / 2.0};
    cover.balls.push_back(b);
    std::vector<std::size_t> members;
    g.for_each_in_ball(b, [&](std::size_t i) {
      covered[i] = 1;
      members.push_back(i);
      if (!O[i]) cover.ball_audit.inside = false;
    });
    if (!(c_overlap * b.radius > dist[x])) cover.ball_audit.meets_complement = false;
    cover.nodes.push_back(std::move(members));
  }
  for (const auto& m : cover.nodes)
    for (std::size_t i : m) ++overlap[i];
  for (std::size_t i = 0; i < O.size(); ++i) {
    if (O[i] && !covered[i]) cover.ball_audit.covers = false;
    cover.ball_audit.max_overlap = std::max(cover.ball_audit.max_overlap, overlap[i]);
  }
  const auto& B = cover.balls;
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = a + 1; b < B.size(); ++b)
      if (distance(B[a].center, B[b].center) < (B[a].radius + B[b].radius) / c_overlap)
        cover.ball_audit.shrunken_disjoint = false;
  return cover;
}

double doubling_constant(const HalfSpaceGrid& g, double lambda, double eta, std::size_t stride, int ladder) {
  auto dict = BallDictionary::graded(g, lambda, stride, ladder);
  double c = 1.0;
  for (const auto& b : dict.balls) {
    double small = gamma_ball(Ball{b.center, eta * b.radius});
    if (small > 0.0) c = std::max(c, gamma_ball(b) / small);
  }
  return c;
}

double eta_bar_midpoint(double doubling) { return 1.0 - 0.5 / doubling; }

namespace {

void require_nonnegative(const GridFunction& H) {
  for (double v : H.values()) require(v >= 0.0, "density checks need H >= 0");
}

void finish(DensityReport& r) {
  r.vacuous = r.lhs == 0.0 && r.rhs == 0.0;
  r.finite = r.vacuous || r.rhs > 0.0;
  r.ratio = r.vacuous ? 0.0 : (r.rhs > 0.0 ? r.lhs / r.rhs : kInf);
}

double masked_integral(const GridFunction& H, const RegionMask& R) {
  const auto& g = H.grid();
  CompensatedSum s;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (R[k] && H.at(k) != 0.0) s += H.at(k) * g.weight(k / g.nt(), k % g.nt());
  return s.value();
}

double spatial_integral(const SpatialFunction& S, const RegionMask& A) {
  const auto& g = S.grid();
  CompensatedSum s;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (A[i]) s += S[i] * g.spatial_weight(i);
  return s.value();
}

}  // namespace

DensityReport density_inequality_check(const RegionMask& A, const GridFunction& H, double eta, double eta_bar,
                                       const ConeSpec& spec) {
  require_spatial(A);
  require_nonnegative(H);
  require_same_grid(A.grid(), H.grid());
  require(eta > 0.0 && eta < 1.0 && eta_bar > 0.0 && eta_bar < 1.0, "eta and eta_bar must lie in (0,1)");
  DensityReport r;
  r.eta = eta;
  r.eta_bar = eta_bar;
  double level = spec.beta * (1.0 + spec.beta);
  auto dense = density_points(A, eta_bar, level);
  r.density_nodes = dense.count();
  auto R = mask_region(dense, (1.0 - eta) * spec.alpha, (1.0 - eta) * spec.beta);
  r.lhs = masked_integral(H, R);
  r.rhs = spatial_integral(area_S(H, 1.0, spec), A);
  r.doubling = doubling_constant(A.grid(), level, eta);
  r.lambda_bound = (eta_bar - 1.0 + 1.0 / r.doubling) * std::exp(-3.0 * spec.beta * (2.0 + spec.beta));
  finish(r);
  return r;
}

DensityReport reverse_fubini_check(const RegionMask& F, const GridFunction& H, double eta, double alpha, double beta,
                                   double delta) {
  require_spatial(F);
  require_nonnegative(H);
  require_same_grid(F.grid(), H.grid());
  require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  DensityReport r;
  r.eta = eta;
  auto dict = BallDictionary::graded(F.grid(), beta);
  auto dense = density_points_containing(F, eta, beta, dict);
  r.density_nodes = dense.count();
  auto R = mask_region(dense, alpha, beta);
  r.lhs = masked_integral(H, R);
  r.rhs = spatial_integral(area_S(H, 1.0, ConeSpec{delta, beta}), F);
  finish(r);
  return r;
}

}  // namespace gtent
