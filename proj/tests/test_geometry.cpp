#include <doctest.h>

#include <cmath>
#include <vector>

#include "gtent/error.hpp"
#include "gtent/generators.hpp"
#include "gtent/geometry.hpp"

using namespace gtent;

namespace {

// Composite Simpson rule for e^{-s^2} on [a, b].
double simpson_gauss(double a, double b, int n) {
  double h = (b - a) / n, s = std::exp(-a * a) + std::exp(-b * b);
  for (int k = 1; k < n; ++k) {
    double x = a + k * h;
    s += (k % 2 ? 4.0 : 2.0) * std::exp(-x * x);
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("cutoff m") {
  CHECK(cutoff_m(Point(0.0)) == 1.0);
  CHECK(cutoff_m(Point(2.0, 0.0)) == 0.5);
  CHECK(cutoff_m(Point(-0.5)) == 1.0);
  CHECK(cutoff_m(Point(-4.0)) == 0.25);
  CHECK(cutoff_m_beta(Point(2.0), 3.0) == doctest::Approx(1.5));
}

TEST_CASE("gamma of balls in one dimension") {
  CHECK(gamma_ball(Ball{Point(0.0), 40.0}) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  const double erf1 = 1.49364826562485405;
  CHECK(gamma_ball(Ball{Point(0.0), 1.0}) == doctest::Approx(erf1).epsilon(1e-14));
  CHECK(simpson_gauss(-1.0, 1.0, 1000000) == doctest::Approx(erf1).epsilon(1e-13));
  // far tail, where erf differences cancel
  CHECK(gamma_ball(Ball{Point(3.0), 0.5}) == doctest::Approx(3.59993281441214026e-4).epsilon(1e-12));
  CHECK(gamma_ball(Ball{Point(3.0), 1.0 / 3.0}) == doctest::Approx(1.41807277535708690e-4).epsilon(1e-12));
  CHECK(gauss_interval(6.0, 7.0) == doctest::Approx(simpson_gauss(6.0, 7.0, 20000)).epsilon(1e-10));
}

TEST_CASE("gamma of balls in two dimensions") {
  // radial closed form pi (1 - e^{-r^2}) for centred discs
  CHECK(gamma_ball(Ball{Point(0.0, 0.0), 1.0}) == doctest::Approx(1.98586530379887152).epsilon(1e-10));
  CHECK(gamma_ball(Ball{Point(0.0, 0.0), 2.5}) ==
        doctest::Approx(M_PI * (1.0 - std::exp(-6.25))).epsilon(1e-10));
  // off-centre disc: gamma is rotation invariant
  double a = gamma_ball(Ball{Point(1.5, 0.0), 0.4});
  double b = gamma_ball(Ball{Point(0.0, 1.5), 0.4});
  double c = gamma_ball(Ball{Point(1.5 / std::sqrt(2.0), 1.5 / std::sqrt(2.0)), 0.4});
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
  CHECK(a == doctest::Approx(c).epsilon(1e-10));
}

TEST_CASE("lebesgue volume") {
  CHECK(lebesgue_ball(Ball{Point(3.0), 0.5}) == doctest::Approx(1.0));
  CHECK(lebesgue_ball(Ball{Point(0.0, 1.0), 2.0}) == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("ball validation and admissibility") {
  CHECK_THROWS_AS(make_ball(Point(0.0), 0.0), PreconditionError);
  CHECK_THROWS_AS(make_ball(Point(0.0), -1.0), PreconditionError);
  CHECK_THROWS_AS(make_ball(Point(NAN), 1.0), PreconditionError);
  CHECK(is_admissible(Ball{Point(3.0), 1.0 / 3.0}, 1.0));
  CHECK_FALSE(is_admissible(Ball{Point(3.0), 0.34}, 1.0));
  CHECK(is_admissible(Ball{Point(3.0), 0.6}, 2.0));
  CHECK(scaled(Ball{Point(1.0), 0.25}, 4.0).radius == 1.0);
}

TEST_CASE("ball measure bracket") {
  CHECK(gamma_ball_bounds_check(Ball{Point(0.0), 1.0}, 1.0));
  CHECK(gamma_ball_bounds_check(Ball{Point(3.0), 1.0 / 3.0}, 1.0));
  CHECK_THROWS_AS(gamma_ball_bounds_check(Ball{Point(3.0), 0.5}, 1.0), PreconditionError);
  Rng rng(7);
  for (int n = 0; n < 300; ++n) {
    double beta = n % 3 == 0 ? 0.5 : (n % 3 == 1 ? 1.0 : 2.0);
    Point c = n % 5 == 0 ? Point(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)) : Point(uniform(rng, -7.0, 7.0));
    Ball b{c, uniform(rng, 0.01, 1.0) * beta * cutoff_m(c)};
    CHECK(gamma_ball_bounds_check(b, beta));
  }
}

TEST_CASE("cone membership") {
  ConeSpec spec{1.0, 1.0};
  // m(2.3) ~ 0.4348 so the cap allows distance 0.3
  CHECK(cone_contains(Point(2.0), spec, UpperPoint{Point(2.3), 10.0}));
  CHECK_FALSE(cone_contains(Point(2.0), spec, UpperPoint{Point(2.5), 10.0}));
  CHECK_FALSE(cone_contains(Point(2.0), spec, UpperPoint{Point(2.3), 0.25}));
  CHECK(cone_contains(Point(2.0), spec, UpperPoint{Point(2.3), 0.31}));
  ConeSpec wide{2.0, 1.0};
  CHECK(cone_contains(Point(2.0), wide, UpperPoint{Point(2.3), 0.16}));
}

TEST_CASE("gaussian and classical tents agree off the axis") {
  Rng rng(11);
  for (double beta : {1.0, 2.0}) {
    Ball b{Point(3.0), 0.25 * beta};
    std::vector<UpperPoint> s;
    for (int n = 0; n < 10000; ++n)
      s.push_back({Point(uniform(rng, 2.0, 4.0)), std::exp(uniform(rng, std::log(1e-3), std::log(4.0)))});
    auto r = compare_tents(b, 1.0, beta, s);
    CHECK(r.preconditions_ok);
    CHECK(r.off_axis_disagreements == 0);
    CHECK(r.classical_only == 0);
  }
}

TEST_CASE("gaussian tent contains the axis above a boundary ball") {
  Ball b{Point(3.0), 1.0 / 3.0};
  UpperPoint high{Point(3.0), 50.0};
  CHECK(ball_tent_contains(b, 1.0, 1.0, high));
  CHECK_FALSE(classical_tent_contains(b, 1.0, high));
  std::vector<UpperPoint> s{high, {Point(3.0), 5.0}};
  auto r = compare_tents(b, 1.0, 1.0, s);
  CHECK(r.on_axis_disagreements == 2);
  CHECK(r.off_axis_disagreements == 0);
}

TEST_CASE("closest point norm") {
  CHECK(closest_point_norm(Ball{Point(3.0), 0.5}) == doctest::Approx(2.5));
  CHECK(closest_point_norm(Ball{Point(-3.0), 0.5}) == doctest::Approx(2.5));
  CHECK(closest_point_norm(Ball{Point(0.2), 0.5}) == 0.0);
  CHECK(closest_point_norm(Ball{Point(3.0, 4.0), 1.0}) == doctest::Approx(4.0));
}

TEST_CASE("comparison lemma") {
  CHECK(comparison_lemma_check(Point(2.0), Point(2.2), 1.0));
  CHECK_THROWS_AS(comparison_lemma_check(Point(2.0), Point(3.0), 1.0), PreconditionError);
  Rng rng(3);
  std::size_t violations = 0;
  for (int n = 0; n < 20000; ++n) {
    double b = n % 3 == 0 ? 0.5 : (n % 3 == 1 ? 1.0 : 2.0);
    Point y(uniform(rng, -8.0, 8.0));
    Point x(y[0] + uniform(rng, -0.999, 0.999) * b * cutoff_m(y));
    if (!comparison_lemma_check(x, y, b)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("cone spec validation") {
  CHECK_THROWS_AS((ConeSpec{0.0, 1.0}.validate()), PreconditionError);
  CHECK_THROWS_AS((ConeSpec{1.0, -1.0}.validate()), PreconditionError);
  CHECK_NOTHROW((ConeSpec{0.5, 2.0}.validate()));
}
