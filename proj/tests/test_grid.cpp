#include <doctest.h>

#include <cmath>

#include "gtent/generators.hpp"
#include "gtent/grid.hpp"

using namespace gtent;

namespace {

double smooth_exact() {
  // int_{-8}^{8} cos y dy * int_{1e-3}^{8} dt / (t (1 + t))
  return 2.0 * std::sin(8.0) * (std::log(8.0 / 9.0) - std::log(1e-3 / 1.001));
}

double smooth_error(const GridPtr& g) {
  auto f = GridFunction::sample(g, [](const Point& y, double t) {
    return std::exp(y[0] * y[0]) * std::cos(y[0]) / (1.0 + t);
  });
  return std::abs(halfspace_integral(f) - smooth_exact());
}

}  // namespace

TEST_CASE("desk grid layout") {
  auto g = HalfSpaceGrid::desk_default();
  CHECK(g->dim() == 1);
  CHECK(g->spatial_size() == 512);
  CHECK(g->nt() == 128);
  CHECK(g->size() == 512 * 128);
  CHECK(g->t_min() == doctest::Approx(1e-3));
  CHECK(g->t_max() == doctest::Approx(8.0));
  CHECK(g->cell() == doctest::Approx(16.0 / 511.0));
  CHECK(g->log_step() == doctest::Approx(std::log(8000.0) / 127.0));
  CHECK(g->node(0)[0] == -8.0);
  CHECK(g->node(511)[0] == doctest::Approx(8.0));
  auto r = g->refined();
  CHECK(r->spatial_size() == 1024);
  CHECK(r->nt() == 256);
  CHECK_FALSE(r->same_as(*g));
  CHECK(g->with_counts(512, 128)->same_as(*g));
}

TEST_CASE("grid construction rejects bad axes") {
  CHECK_THROWS_AS(HalfSpaceGrid::make({Axis{1.0, -1.0, 10}}, 1e-3, 1.0, 8), PreconditionError);
  CHECK_THROWS_AS(HalfSpaceGrid::make({Axis{-1.0, 1.0, 1}}, 1e-3, 1.0, 8), PreconditionError);
  CHECK_THROWS_AS(HalfSpaceGrid::make({Axis{-1.0, 1.0, 10}}, 0.0, 1.0, 8), PreconditionError);
  CHECK_THROWS_AS(HalfSpaceGrid::make({Axis{-1.0, 1.0, 10}}, 2.0, 1.0, 8), PreconditionError);
}

TEST_CASE("two-dimensional indexing") {
  auto g = HalfSpaceGrid::make({Axis{-2.0, 2.0, 9}, Axis{-1.0, 1.0, 5}}, 0.01, 1.0, 4);
  CHECK(g->dim() == 2);
  CHECK(g->spatial_size() == 45);
  for (std::size_t i = 0; i < g->spatial_size(); ++i) {
    auto m = g->multi(i);
    CHECK(g->flat(m[0], m[1]) == i);
  }
  CHECK(g->nearest_node(Point(0.49, -0.51)) == g->flat(5, 1));
}

TEST_CASE("ball enumeration matches a brute-force scan") {
  auto g = HalfSpaceGrid::desk_default();
  Rng rng(5);
  for (int n = 0; n < 50; ++n) {
    Ball b{Point(uniform(rng, -9.0, 9.0)), uniform(rng, 0.01, 3.0)};
    std::vector<std::size_t> got, want;
    g->for_each_in_ball(b, [&](std::size_t i) { got.push_back(i); });
    for (std::size_t i = 0; i < g->spatial_size(); ++i)
      if (distance(g->node(i), b.center) < b.radius) want.push_back(i);
    CHECK(got == want);
  }
}

TEST_CASE("gaussian integrals") {
  auto g = HalfSpaceGrid::desk_default();
  auto one = SpatialFunction::sample(g, [](const Point&) { return 1.0; });
  CHECK(lp_gamma_norm(one, 1.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  auto c = SpatialFunction::sample(g, [](const Point&) { return -2.5; });
  CHECK(lp_gamma_norm(c, kInf) == 2.5);
  CHECK_THROWS_AS(lp_gamma_norm(one, 0.5), PreconditionError);
  // p = 2 of an indicator is the square root of its grid measure, close to the closed form
  Ball b{Point(0.5), 1.0};
  auto ind = SpatialFunction::sample(g, [&](const Point& y) { return distance(y, b.center) < b.radius ? 1.0 : 0.0; });
  CHECK(lp_gamma_norm(ind, 2.0) == doctest::Approx(std::sqrt(grid_gamma(*g, b))).epsilon(1e-14));
  CHECK(lp_gamma_norm(ind, 2.0) == doctest::Approx(std::sqrt(gamma_ball(b))).epsilon(0.01));
}

TEST_CASE("grid measure of balls converges to the closed form") {
  auto g = HalfSpaceGrid::desk_default();
  Ball b{Point(0.0), 1.0};
  double e1 = std::abs(grid_gamma(*g, b) - gamma_ball(b));
  double e2 = std::abs(grid_gamma(*g->refined(), b) - gamma_ball(b));
  CHECK(e1 < g->cell());
  CHECK(e2 < e1);
}

TEST_CASE("half-space integral") {
  auto g = HalfSpaceGrid::desk_default();
  CHECK(halfspace_integral(GridFunction::zeros(g)) == 0.0);
  Rng rng(1);
  auto f1 = random_function(g, rng), f2 = random_function(g, rng);
  CHECK(halfspace_integral(f1 + f2) == doctest::Approx(halfspace_integral(f1) + halfspace_integral(f2)).epsilon(1e-13));

  // indicator of [0,1] x [1,e] weighted by e^{y^2}: exact value 1, sampled
  // with first-order error from the two jumps in each variable
  auto ind = GridFunction::sample(g, [](const Point& y, double t) {
    return (y[0] >= 0.0 && y[0] <= 1.0 && t >= 1.0 && t <= M_E) ? std::exp(y[0] * y[0]) : 0.0;
  });
  CHECK(std::abs(halfspace_integral(ind) - 1.0) <= M_E * g->cell() + g->log_step());
}

TEST_CASE("quadrature converges at second order on a smooth integrand") {
  auto g = HalfSpaceGrid::desk_default();
  double e1 = smooth_error(g), e2 = smooth_error(g->refined());
  CHECK(e1 < 2e-3);
  CHECK(e1 / e2 >= 3.0);
}

TEST_CASE("restriction") {
  auto g = HalfSpaceGrid::make({Axis{-4.0, 4.0, 64}}, 1e-2, 4.0, 16);
  Rng rng(2);
  auto f = random_function(g, rng, {3.0, 1e-2, 4.0, 0.5, 1.0});
  auto full = RegionMask::full(g, MaskKind::HalfSpace);
  auto none = RegionMask::empty(g, MaskKind::HalfSpace);
  CHECK(restrict(f, full).values().size() == f.values().size());
  for (std::size_t k = 0; k < f.values().size(); ++k) {
    CHECK(restrict(f, full).at(k) == f.at(k));
    CHECK(restrict(f, none).at(k) == 0.0);
  }
  auto m1 = RegionMask::half_space_from(g, [](const Point& y, double) { return y[0] < -1.0; });
  auto m2 = RegionMask::half_space_from(g, [](const Point&, double t) { return t > 1.0; }).minus(m1);
  auto a = restrict(f, m1) + restrict(f, m2), b = restrict(f, m1.unite(m2));
  for (std::size_t k = 0; k < f.values().size(); ++k) CHECK(a.at(k) == b.at(k));
  auto spatial = RegionMask::full(g, MaskKind::Spatial);
  CHECK(spatial.size() == g->spatial_size());
}

TEST_CASE("mask algebra") {
  auto g = HalfSpaceGrid::make({Axis{-4.0, 4.0, 33}}, 1e-2, 4.0, 8);
  auto a = RegionMask::spatial_from(g, [](const Point& y) { return y[0] < 1.0; });
  auto b = RegionMask::ball(g, Ball{Point(0.0), 2.0});
  CHECK(a.intersect(b).subset_of(a));
  CHECK(a.intersect(b).subset_of(b));
  CHECK(a.unite(b).count() + a.intersect(b).count() == a.count() + b.count());
  CHECK(a.complement().intersect(a).none());
  CHECK(a.complement().unite(a).all());
  CHECK(a.symmetric_difference(a) == 0);
  CHECK(a.minus(b) == a.intersect(b.complement()));
  auto other = HalfSpaceGrid::make({Axis{-4.0, 4.0, 17}}, 1e-2, 4.0, 8);
  CHECK_THROWS_AS(a.unite(RegionMask::full(other, MaskKind::Spatial)), PreconditionError);
  CHECK_THROWS_AS(a.unite(RegionMask::full(g, MaskKind::HalfSpace)), PreconditionError);
}
