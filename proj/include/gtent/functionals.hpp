#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtent/geometry.hpp"
#include "gtent/grid.hpp"
#include "gtent/parallel.hpp"

namespace gtent {

// Per-node cone radius r(y,t) = alpha t ^ beta m(y) and the grid measure of
// B(y, r), shared by every vertex whose cone contains (y,t).
class ConeTable {
 public:
  ConeTable(GridPtr grid, double alpha, double beta, Exec exec = Exec::Parallel);

  const HalfSpaceGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double cap(std::size_t i) const { return cap_[i]; }  // beta m(y_i)
  double radius(std::size_t i, std::size_t j) const { return radius_[grid_->index(i, j)]; }
  double denominator(std::size_t i, std::size_t j) const { return denom_[grid_->index(i, j)]; }
  // Smallest j with alpha t_j > d (nt if none).
  std::size_t first_above(double d) const;

 private:
  GridPtr grid_;
  double alpha_, beta_;
  std::vector<double> cap_, radius_, denom_, alpha_t_;
};

// Finite search family for suprema over balls.
struct BallDictionary {
  std::vector<Ball> balls;

  // Centers at every stride-th node per axis, radii level m(c) 2^{-k},
  // k = 0..ladder-1 (k = 0 is the admissibility boundary).
  static BallDictionary graded(const HalfSpaceGrid& grid, double level, std::size_t stride = 4, int ladder = 7);
  bool within(double level) const;  // every ball admissible at this level
  std::vector<double> distinct_radii() const;
};

struct ExponentPair {
  double p = 1.0;
  double q = 2.0;
  void validate(bool continuous_intent) const;
};

SpatialFunction area_S(const GridFunction& f, double q, const ConeSpec& spec, Exec exec = Exec::Parallel);
SpatialFunction area_S(const GridFunction& f, double q, const ConeTable& table, Exec exec = Exec::Parallel);
SpatialFunction area_S_sup(const GridFunction& f, const ConeSpec& spec, Exec exec = Exec::Parallel);
SpatialFunction area_S_truncated(const GridFunction& f, double q, const ConeSpec& spec, double h,
                                 Exec exec = Exec::Parallel);

SpatialFunction carleson_C(const GridFunction& f, double q, double alpha, double beta,
                           const BallDictionary& dict, Exec exec = Exec::Parallel);

// q-th power of the tent sum over T(B), i.e. sum of |f|^q weight on the tent.
double tent_mass(const GridFunction& f, double q, double alpha, double beta, const Ball& b);

double tent_norm(const GridFunction& f, ExponentPair pq, double alpha, double beta,
                 const BallDictionary* dict = nullptr);

SpatialFunction maximal_noncentered(const SpatialFunction& g, double lambda, const BallDictionary& dict,
                                    Exec exec = Exec::Parallel);
SpatialFunction maximal_centered(const SpatialFunction& g, double lambda, Exec exec = Exec::Parallel);

// Largest h of the ladder with S_{q',h} g(x) <= M C(x); 0 when no h
// qualifies and +inf when all do.
SpatialFunction stopping_time(const GridFunction& g, double qprime, const ConeSpec& spec, double M_const,
                              std::span<const double> h_ladder, const SpatialFunction& carleson,
                              Exec exec = Exec::Parallel);

struct IndependenceSweep {
  std::vector<ConeSpec> params;
  std::vector<double> norms;
  std::vector<std::vector<double>> ratios;  // ratios[a][b] = norm_a / norm_b
  double max_min = 1.0;
};

IndependenceSweep independence_sweep(const GridFunction& f, ExponentPair pq, std::span<const double> alphas,
                                     std::span<const double> betas);

}  // namespace gtent
