#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gtent {

// A point of R^n, n in {1, 2}.
class Point {
 public:
  Point() = default;
  explicit Point(double x);
  Point(double x, double y);
  static Point from(std::span<const double> coords);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double norm() const;
  double norm2() const;
  std::vector<double> coords() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::array<double, 2> c_{0.0, 0.0};
  int dim_ = 1;
};

double distance(const Point& a, const Point& b);
Point lerp(const Point& a, const Point& b, double s);  // a + s (b - a)

struct UpperPoint {
  Point y;
  double t = 1.0;
};

struct Ball {
  Point center;
  double radius = 1.0;
};

Ball make_ball(const Point& c, double r);  // validates r > 0 and finite coords
Ball scaled(const Ball& b, double factor);

enum class ConeVariant { Pencil, Fixed };

struct ConeSpec {
  double alpha = 1.0;
  double beta = 1.0;
  ConeVariant variant = ConeVariant::Pencil;
  void validate() const;
};

double cutoff_m(const Point& x);
inline double cutoff_m_beta(const Point& x, double beta) { return beta * cutoff_m(x); }

bool is_admissible(const Ball& b, double beta);

// Lebesgue volume of B: omega_n r^n.
double lebesgue_ball(const Ball& b);

// Integral of e^{-s^2} over [a, b], stable for tails.
double gauss_interval(double a, double b);

// gamma(B) for the unnormalized measure e^{-|y|^2} dy.
double gamma_ball(const Ball& b);

// Two-sided ball-measure bracket for admissible balls. Throws
// PreconditionError when B is not admissible at level beta.
bool gamma_ball_bounds_check(const Ball& b, double beta);

bool cone_contains(const Point& vertex, const ConeSpec& spec, const UpperPoint& p);
bool ball_tent_contains(const Ball& b, double alpha, double beta, const UpperPoint& p);
bool classical_tent_contains(const Ball& b, double alpha, const UpperPoint& p);

// |q_B| for q_B the point of the closed ball closest to the origin.
double closest_point_norm(const Ball& b);

struct TentComparison {
  std::size_t samples = 0;
  std::size_t off_axis_disagreements = 0;
  std::size_t on_axis_disagreements = 0;
  std::size_t classical_only = 0;  // classical in, Gaussian out: never expected
  bool preconditions_ok = true;
  std::vector<std::string> warnings;
  std::vector<UpperPoint> disagreements;
};

TentComparison compare_tents(const Ball& b, double alpha, double beta,
                             std::span<const UpperPoint> samples);

// Both strict inequalities m(y) < (b+1) m(x) and m(x) < (b+1) m(y).
// Throws PreconditionError unless |x - y| < b m(y).
bool comparison_lemma_check(const Point& x, const Point& y, double b);

}  // namespace gtent
