#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gtent/functionals.hpp"
#include "gtent/grid.hpp"

namespace gtent {

// Dyadic cube of side 2^{-level}, anchored at the spatial box corner.
struct DyadicCube {
  int level = 0;
  std::array<std::int64_t, 2> index{0, 0};
  int dim = 1;

  double side() const;
  double diam() const;
  double lo(const HalfSpaceGrid& g, int axis) const;
  double hi(const HalfSpaceGrid& g, int axis) const;
  Point center(const HalfSpaceGrid& g) const;
  bool contains(const HalfSpaceGrid& g, const Point& y) const;  // half-open
};

struct CubeAudit {
  bool bracket_ok = true;         // diam <= dist <= 4 diam for every cube
  bool disjoint_ok = true;        // each node claimed by at most one cube
  std::size_t uncovered = 0;      // nodes of O left outside every cube
  std::size_t outside_target = 0; // covered nodes not in O
  double tolerance = 0.0;         // one-cell boundary tolerance used
};

struct BallAudit {
  bool covers = true;             // O = union of the balls at every node
  bool inside = true;             // every ball node lies in O
  bool meets_complement = true;   // C B_j meets O^c
  bool shrunken_disjoint = true;  // {C^{-1} B_j} pairwise disjoint
  std::size_t max_overlap = 0;
};

struct WhitneyCover {
  explicit WhitneyCover(RegionMask t) : target(std::move(t)) {}

  std::vector<DyadicCube> cubes;
  std::vector<double> cube_dist;                // dist(Q, O^c) per cube
  std::vector<std::vector<std::size_t>> nodes;  // spatial nodes per cube
  std::vector<Ball> balls;
  double c_overlap = 0.0;
  RegionMask target;
  CubeAudit cube_audit;
  BallAudit ball_audit;

  // cube id of every spatial node, -1 where none
  std::vector<std::int64_t> owner() const;
};

// x kept iff gamma(A cap B)/gamma(B) >= eta for every centered ball
// B(x, lambda m(x) 2^{-k}), k = 0, 1, ... down to a radius below half a cell.
RegionMask density_points(const RegionMask& A, double eta, double lambda, Exec exec = Exec::Parallel);

// Variant over all balls containing x: the dictionary's balls admissible at
// level lambda plus the centered ladder at x.
RegionMask density_points_containing(const RegionMask& F, double eta, double lambda, const BallDictionary& dict,
                                     Exec exec = Exec::Parallel);

// Every node of W satisfies dist(x, W^c) <= lambda m(x) + tolerance.
bool is_admissible_whitney(const RegionMask& W, double lambda, double tolerance = -1.0);

// Centers c whose admissible ball B(c, lambda m(c)) meets A.
RegionMask plus_C(const RegionMask& A, double lambda);

WhitneyCover whitney_cubes(const RegionMask& O);
// Greedy cover by B(x, dist(x, O^c)/2) in decreasing-distance order; needs
// C_overlap > 2 so that C B_j reaches O^c.
WhitneyCover whitney_balls(const RegionMask& O, double c_overlap);

struct DensityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool vacuous = false;
  bool finite = true;
  double eta = 0.0, eta_bar = 0.0;
  double doubling = 0.0;       // measured C
  double lambda_bound = 0.0;   // (eta_bar - 1 + 1/C) e^{-3 beta (2+beta)}
  std::size_t density_nodes = 0;
};

// Doubling constant max gamma(B(x,r)) / gamma(B(x, eta r)) over the centered
// dictionary balls admissible at level lambda (closed-form gamma).
double doubling_constant(const HalfSpaceGrid& g, double lambda, double eta, std::size_t stride = 4, int ladder = 7);
double eta_bar_midpoint(double doubling);

DensityReport density_inequality_check(const RegionMask& A, const GridFunction& H, double eta, double eta_bar,
                                       const ConeSpec& spec);
DensityReport reverse_fubini_check(const RegionMask& F, const GridFunction& H, double eta, double alpha, double beta,
                                   double delta);

}  // namespace gtent
