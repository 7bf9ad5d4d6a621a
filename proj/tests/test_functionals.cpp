#include <doctest.h>

#include <cmath>

#include "gtent/functionals.hpp"
#include "gtent/generators.hpp"
#include "gtent/reference.hpp"

using namespace gtent;

namespace {

GridPtr small_grid() { return HalfSpaceGrid::make({Axis{-5.0, 5.0, 81}}, 1e-2, 6.0, 24); }

void check_close(const SpatialFunction& a, const SpatialFunction& b, double rel) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(rel).scale(1e-300));
}

void check_identical(const SpatialFunction& a, const SpatialFunction& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

// S_q f(x) straight from its definition at one vertex.
double area_at(const GridFunction& f, double q, double alpha, double beta, const Point& x) {
  const auto& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t j = 0; j < g.nt(); ++j) {
      const Point& y = g.node(i);
      double t = g.t(j);
      double r = std::min(alpha * t, beta * cutoff_m(y));
      if (!(distance(x, y) < r) || f(i, j) == 0.0) continue;
      s += std::pow(std::abs(f(i, j)), q) * g.weight(i, j) / grid_gamma(g, Ball{y, r});
    }
  return std::pow(s, 1.0 / q);
}

}  // namespace

TEST_CASE("area function agrees with the reference kernel") {
  auto g = small_grid();
  Rng rng(21);
  for (double q : {1.0, 2.0, 3.5})
    for (auto spec : {ConeSpec{1.0, 1.0}, ConeSpec{0.5, 2.0}, ConeSpec{2.0, 0.5}}) {
      auto f = random_function(g, rng, {3.0, 1e-2, 6.0, 0.3, 1.0});
      check_close(area_S(f, q, spec), reference::area_S(f, q, spec), 1e-12);
      check_identical(area_S(f, q, spec, Exec::Serial), area_S(f, q, spec, Exec::Parallel));
    }
}

TEST_CASE("area function of a tent indicator at probe vertices") {
  auto g = HalfSpaceGrid::desk_default();
  auto f = tent_indicator(g, Ball{Point(0.0), 1.0}, 1.0, 1.0);
  auto S = area_S(f, 2.0, {1.0, 1.0});
  for (int k = 0; k < 16; ++k) {
    std::size_t i = 200 + 7 * static_cast<std::size_t>(k);
    CHECK(S[i] == doctest::Approx(area_at(f, 2.0, 1.0, 1.0, g->node(i))).epsilon(1e-12).scale(1e-300));
  }
}

TEST_CASE("sup area function") {
  auto g = small_grid();
  Rng rng(8);
  auto f = random_function(g, rng, {3.0, 1e-2, 6.0, 0.3, 1.0}).with_continuity_intent();
  check_close(area_S_sup(f, {1.0, 1.0}), reference::area_S_sup(f, {1.0, 1.0}), 1e-14);
  check_identical(area_S_sup(f, {1.0, 1.0}, Exec::Serial), area_S_sup(f, {1.0, 1.0}, Exec::Parallel));
  // support of f in [-r, r] x [a, b] keeps S_inf inside |x| <= r + alpha b
  const double r = 1.0, a = 0.05, b = 0.4, alpha = 1.5;
  auto k = GridFunction::sample(
      g, [&](const Point& y, double t) { return std::abs(y[0]) <= r && t >= a && t <= b ? 1.0 : 0.0; }, true);
  auto S = area_S_sup(k, {alpha, 1.0});
  for (std::size_t i = 0; i < g->spatial_size(); ++i)
    if (std::abs(g->node(i)[0]) > r + alpha * b) CHECK(S[i] == 0.0);
}

TEST_CASE("truncated area function is monotone in the height") {
  auto g = small_grid();
  Rng rng(9);
  auto f = random_function(g, rng, {3.0, 1e-2, 6.0, 0.4, 1.0});
  ConeSpec spec{1.0, 1.0};
  auto full = area_S(f, 2.0, spec);
  auto low = area_S_truncated(f, 2.0, spec, g->t_min() / 2.0);
  auto high = area_S_truncated(f, 2.0, spec, 2.0 * g->t_max());
  for (std::size_t i = 0; i < g->spatial_size(); ++i) {
    CHECK(low[i] == 0.0);
    CHECK(high[i] == doctest::Approx(full[i]).epsilon(1e-13).scale(1e-300));
  }
  SpatialFunction prev = low;
  for (double h : {0.03, 0.1, 0.3, 1.0, 3.0}) {
    auto cur = area_S_truncated(f, 2.0, spec, h);
    for (std::size_t i = 0; i < g->spatial_size(); ++i) CHECK(cur[i] >= prev[i]);
    prev = cur;
  }
}

TEST_CASE("carleson functional") {
  auto g = small_grid();
  Rng rng(10);
  auto f = random_function(g, rng, {3.0, 1e-2, 6.0, 0.3, 1.0});
  auto dict = BallDictionary::graded(*g, 1.0, 3, 5);
  CHECK(dict.within(1.0));
  CHECK_FALSE(dict.within(0.5));
  check_close(carleson_C(f, 2.0, 1.0, 1.0, dict), reference::carleson_C(f, 2.0, 1.0, 1.0, dict), 1e-12);
  check_identical(carleson_C(f, 2.0, 1.0, 1.0, dict, Exec::Serial), carleson_C(f, 2.0, 1.0, 1.0, dict, Exec::Parallel));

  // the B0 term alone bounds C from below near the centre of B0
  Ball b0 = dict.balls[5 * 13 + 1];
  auto t = tent_indicator(g, b0, 1.0, 1.0);
  auto C = carleson_C(t, 2.0, 1.0, 1.0, dict);
  double term = std::sqrt(tent_mass(t, 2.0, 1.0, 1.0, b0) / grid_gamma(*g, b0));
  CHECK(term > 0.0);
  CHECK(C[g->nearest_node(b0.center)] >= term * (1.0 - 1e-14));
}

TEST_CASE("T^{p,p} equals L^p") {
  auto g = HalfSpaceGrid::desk_default();
  Rng rng(12);
  for (int n = 0; n < 4; ++n) {
    auto f = random_function(g, rng, {uniform(rng, 1.0, 4.0), 1e-3, 8.0, 0.2, 1.0});
    for (double p : {1.0, 2.0, 3.0}) {
      std::vector<double> v(f.values().begin(), f.values().end());
      for (double& x : v) x = std::pow(std::abs(x), p);
      double lp = std::pow(halfspace_integral(GridFunction(g, std::move(v))), 1.0 / p);
      double tn = tent_norm(f, {p, p}, 1.0, 1.0);
      CHECK(std::abs(tn - lp) <= 1e-9 * lp);
    }
  }
}

TEST_CASE("tent norm is a norm") {
  auto g = small_grid();
  Rng rng(13);
  CHECK(tent_norm(GridFunction::zeros(g), {1.0, 2.0}, 1.0, 1.0) == 0.0);
  for (int n = 0; n < 100; ++n) {
    auto f = random_function(g, rng, {3.0, 1e-2, 6.0, 0.2, 1.0});
    auto h = random_function(g, rng, {3.0, 1e-2, 6.0, 0.2, 1.0});
    ExponentPair pq{n % 2 ? 1.0 : 2.0, n % 3 ? 2.0 : 1.5};
    double a = tent_norm(f, pq, 1.0, 1.0), b = tent_norm(h, pq, 1.0, 1.0), c = tent_norm(f + h, pq, 1.0, 1.0);
    CHECK(c <= (a + b) * (1.0 + 1e-12));
    CHECK(tent_norm(f.scaled(-3.0), pq, 1.0, 1.0) == doctest::Approx(3.0 * a).epsilon(1e-12));
  }
}

TEST_CASE("exponent validation") {
  CHECK_THROWS_AS((ExponentPair{0.5, 2.0}.validate(false)), PreconditionError);
  CHECK_THROWS_AS((ExponentPair{1.0, 0.5}.validate(false)), PreconditionError);
  CHECK_THROWS_AS((ExponentPair{kInf, 1.0}.validate(false)), PreconditionError);
  CHECK_THROWS_AS((ExponentPair{1.0, kInf}.validate(false)), PreconditionError);
  CHECK_NOTHROW((ExponentPair{1.0, kInf}.validate(true)));
  CHECK_NOTHROW((ExponentPair{kInf, 2.0}.validate(false)));
}

TEST_CASE("maximal functions") {
  auto g = HalfSpaceGrid::make({Axis{-4.0, 4.0, 65}}, 1e-2, 4.0, 8);
  Rng rng(14);
  std::vector<double> v(g->spatial_size());
  for (auto& x : v) x = uniform(rng, 0.0, 1.0) < 0.2 ? uniform(rng, 0.0, 3.0) : 0.0;
  SpatialFunction s(g, v);
  // every centred ball of the ladder is in the stride-1 dictionary
  auto dict = BallDictionary::graded(*g, 1.0, 1, 12);
  auto c = maximal_centered(s, 1.0), nc = maximal_noncentered(s, 1.0, dict);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(c[i] <= nc[i] * (1.0 + 1e-14));
    CHECK(c[i] >= s[i] * (1.0 - 1e-14));
  }
  check_identical(maximal_centered(s, 1.0, Exec::Serial), maximal_centered(s, 1.0, Exec::Parallel));
  CHECK_THROWS_AS(maximal_centered(s, 0.0), PreconditionError);
}

TEST_CASE("stopping time limits") {
  auto g = small_grid();
  ConeSpec spec{1.0, 1.0};
  auto dict = BallDictionary::graded(*g, 1.0, 4, 4);
  const double ladder[] = {0.05, 0.2, 1.0};
  auto zero = GridFunction::zeros(g);
  auto h0 = stopping_time(zero, 2.0, spec, 1.0, ladder, carleson_C(zero, 2.0, 1.0, 1.0, dict));
  for (double h : h0.values()) CHECK(std::isinf(h));
  Rng rng(15);
  auto f = random_function(g, rng, {3.0, 1e-2, 6.0, 0.3, 1.0});
  auto C = carleson_C(f, 2.0, 1.0, 1.0, dict);
  auto big = stopping_time(f, 2.0, spec, 1e12, ladder, C);
  for (double h : big.values()) CHECK(std::isinf(h));
  // larger M never lowers the stopping time
  auto a = stopping_time(f, 2.0, spec, 0.5, ladder, C), b = stopping_time(f, 2.0, spec, 2.0, ladder, C);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] <= b[i]);
}

TEST_CASE("independence sweep ratios") {
  auto g = small_grid();
  auto f = tent_indicator(g, Ball{Point(0.3), 0.8}, 1.0, 1.0);
  const double ab[] = {0.5, 1.0, 2.0};
  auto s = independence_sweep(f, {1.0, 2.0}, ab, ab);
  REQUIRE(s.params.size() == 9);
  for (std::size_t a = 0; a < 9; ++a) {
    CHECK(s.ratios[a][a] == doctest::Approx(1.0));
    for (std::size_t b = 0; b < 9; ++b) {
      CHECK(std::isfinite(s.ratios[a][b]));
      CHECK(s.ratios[a][b] * s.ratios[b][a] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(s.max_min >= 1.0);
}
