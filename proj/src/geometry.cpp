#include "gtent/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gtent/error.hpp"

namespace gtent {

Point::Point(double x) : c_{x, 0.0}, dim_(1) {}
Point::Point(double x, double y) : c_{x, y}, dim_(2) {}

Point Point::from(std::span<const double> coords) {
  if (coords.size() == 1) return Point(coords[0]);
  if (coords.size() == 2) return Point(coords[0], coords[1]);
  throw PreconditionError("points must have dimension 1 or 2");
}

double Point::norm2() const { return dim_ == 1 ? c_[0] * c_[0] : c_[0] * c_[0] + c_[1] * c_[1]; }
double Point::norm() const { return dim_ == 1 ? std::abs(c_[0]) : std::hypot(c_[0], c_[1]); }

std::vector<double> Point::coords() const {
  return dim_ == 1 ? std::vector<double>{c_[0]} : std::vector<double>{c_[0], c_[1]};
}

double distance(const Point& a, const Point& b) {
  if (a.dim() == 1) return std::abs(a[0] - b[0]);
  double dx = a[0] - b[0], dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

Point lerp(const Point& a, const Point& b, double s) {
  if (a.dim() == 1) return Point(a[0] + s * (b[0] - a[0]));
  return Point(a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]));
}

Ball make_ball(const Point& c, double r) {
  for (int i = 0; i < c.dim(); ++i) require(std::isfinite(c[i]), "ball center must be finite");
  require(std::isfinite(r) && r > 0.0, "ball radius must be positive and finite");
  return Ball{c, r};
}

Ball scaled(const Ball& b, double factor) { return make_ball(b.center, b.radius * factor); }

void ConeSpec::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0, "aperture alpha must be positive");
  require(std::isfinite(beta) && beta > 0.0, "admissibility beta must be positive");
}

double cutoff_m(const Point& x) {
  double r = x.norm();
  return r <= 1.0 ? 1.0 : 1.0 / r;
}

bool is_admissible(const Ball& b, double beta) { return b.radius <= cutoff_m_beta(b.center, beta); }

double lebesgue_ball(const Ball& b) {
  return b.center.dim() == 1 ? 2.0 * b.radius : std::numbers::pi * b.radius * b.radius;
}

double gauss_interval(double a, double b) {
  if (!(a < b)) return 0.0;
  constexpr double half_sqrt_pi = 0.88622692545275801364908374167057;
  if (a >= 0.0) return half_sqrt_pi * (std::erfc(a) - std::erfc(b));
  if (b <= 0.0) return half_sqrt_pi * (std::erfc(-b) - std::erfc(-a));
  return half_sqrt_pi * (std::erf(b) - std::erf(a));
}

double gamma_ball(const Ball& b) {
  const Point& c = b.center;
  double r = b.radius;
  if (c.dim() == 1) return gauss_interval(c[0] - r, c[0] + r);
  if (c.dim() != 2) throw PreconditionError("gamma_ball supports n in {1, 2}");
  // x = c0 + r sin(th) removes the square-root endpoint singularity.
  auto slice = [&](double th) {
    double s = r * std::cos(th);
    double x = c[0] + r * std::sin(th);
    return s * std::exp(-x * x) * gauss_interval(c[1] - s, c[1] + s);
  };
  using boost::math::quadrature::gauss_kronrod;
  double h = std::numbers::pi / 2;
  return gauss_kronrod<double, 31>::integrate(slice, -h, h, 20, 1e-12);
}

bool gamma_ball_bounds_check(const Ball& b, double beta) {
  if (!is_admissible(b, beta)) throw PreconditionError("ball is not admissible at the requested level");
  double g = gamma_ball(b);
  double base = std::exp(-b.center.norm2()) * lebesgue_ball(b);
  double k = std::exp((2.0 + beta) * beta);
  return base / k <= g && g <= base * k;
}

bool cone_contains(const Point& vertex, const ConeSpec& spec, const UpperPoint& p) {
  double d = distance(p.y, vertex);
  double cap = spec.variant == ConeVariant::Pencil ? cutoff_m_beta(p.y, spec.beta)
                                                   : cutoff_m_beta(vertex, spec.beta);
  return d < std::min(spec.alpha * p.t, cap);
}

bool ball_tent_contains(const Ball& b, double alpha, double beta, const UpperPoint& p) {
  double d = std::max(b.radius - distance(p.y, b.center), 0.0);
  return d >= std::min(alpha * p.t, cutoff_m_beta(p.y, beta));
}

bool classical_tent_contains(const Ball& b, double alpha, const UpperPoint& p) {
  double d = std::max(b.radius - distance(p.y, b.center), 0.0);
  return d >= alpha * p.t;
}

double closest_point_norm(const Ball& b) { return std::max(b.center.norm() - b.radius, 0.0); }

TentComparison compare_tents(const Ball& b, double alpha, double beta,
                             std::span<const UpperPoint> samples) {
  TentComparison rep;
  if (beta < 1.0) rep.warnings.push_back("beta < 1");
  if (closest_point_norm(b) < std::sqrt(beta)) rep.warnings.push_back("|q_B| < sqrt(beta)");
  if (!is_admissible(b, beta)) rep.warnings.push_back("ball not admissible at level beta");
  rep.preconditions_ok = rep.warnings.empty();
  for (const auto& p : samples) {
    ++rep.samples;
    bool g = ball_tent_contains(b, alpha, beta, p);
    bool c = classical_tent_contains(b, alpha, p);
    if (g == c) continue;
    if (c) ++rep.classical_only;
    if (p.y == b.center)
      ++rep.on_axis_disagreements;
    else
      ++rep.off_axis_disagreements;
    rep.disagreements.push_back(p);
  }
  return rep;
}

bool comparison_lemma_check(const Point& x, const Point& y, double b) {
  require(b > 0.0, "comparison constant b must be positive");
  double mx = cutoff_m(x), my = cutoff_m(y);
  require(distance(x, y) < b * my, "comparison lemma hypothesis |x-y| < b m(y) violated");
  return my < (b + 1.0) * mx && mx < (b + 1.0) * my;
}

}  // namespace gtent
