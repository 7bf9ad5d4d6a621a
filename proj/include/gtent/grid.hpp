#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "gtent/error.hpp"
#include "gtent/geometry.hpp"

namespace gtent {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Axis {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t count = 512;
  double spacing() const { return (hi - lo) / static_cast<double>(count - 1); }
  double node(std::size_t i) const { return lo + static_cast<double>(i) * spacing(); }
  friend bool operator==(const Axis&, const Axis&) = default;
};

// Tensor grid on box x [t_min, t_max], log-uniform in t. Spatial nodes are
// flattened as i = ix * ny + iy; values of grid functions are stored
// spatial-major, i * nt + j.
class HalfSpaceGrid {
 public:
  static std::shared_ptr<const HalfSpaceGrid> make(std::vector<Axis> axes, double t_min,
                                                   double t_max, std::size_t nt);
  static std::shared_ptr<const HalfSpaceGrid> desk_default();
  std::shared_ptr<const HalfSpaceGrid> refined() const;  // doubles every node count
  std::shared_ptr<const HalfSpaceGrid> with_counts(std::size_t nx, std::size_t nt) const;

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
  std::size_t spatial_size() const { return nodes_.size(); }
  std::size_t nt() const { return t_.size(); }
  std::size_t size() const { return nodes_.size() * t_.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return i * t_.size() + j; }

  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }
  double log_step() const { return log_step_; }
  double cell() const;  // smallest spatial spacing

  const Point& node(std::size_t i) const { return nodes_[i]; }
  double t(std::size_t j) const { return t_[j]; }
  std::span<const double> ts() const { return t_; }
  double spatial_weight(std::size_t i) const { return w_gauss_[i]; }  // includes e^{-|x|^2}
  double lebesgue_weight(std::size_t i) const { return w_leb_[i]; }
  double t_weight(std::size_t j) const { return w_t_[j]; }
  double weight(std::size_t i, std::size_t j) const { return w_gauss_[i] * w_t_[j]; }

  std::size_t flat(std::size_t ix, std::size_t iy) const;
  std::array<std::size_t, 2> multi(std::size_t i) const;

  bool inside_box(const Point& y) const;
  double distance_to_box_boundary(const Point& y) const;  // 0 outside the box
  std::size_t nearest_node(const Point& y) const;
  std::size_t nearest_t(double t) const;

  // Calls f(i) for every spatial node with |x_i - c| < r, in increasing i.
  void for_each_in_ball(const Ball& b, const std::function<void(std::size_t)>& f) const;
  // Index range per axis of nodes that can be within distance r of c.
  void ball_index_box(const Ball& b, std::array<std::size_t, 2>& lo,
                      std::array<std::size_t, 2>& hi) const;

  bool same_as(const HalfSpaceGrid& o) const {
    return axes_ == o.axes_ && t_ == o.t_;
  }

 private:
  HalfSpaceGrid() = default;
  std::vector<Axis> axes_;
  std::vector<Point> nodes_;
  std::vector<double> w_gauss_, w_leb_;
  std::vector<double> t_, w_t_;
  double log_step_ = 0.0;
};

using GridPtr = std::shared_ptr<const HalfSpaceGrid>;

void require_same_grid(const HalfSpaceGrid& a, const HalfSpaceGrid& b);

// Immutable function on the grid nodes.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values, bool continuous_intent = false);
  static GridFunction zeros(GridPtr grid);
  template <class F>
  static GridFunction sample(GridPtr grid, F&& f, bool continuous_intent = false) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < grid->spatial_size(); ++i)
      for (std::size_t j = 0; j < grid->nt(); ++j)
        v[grid->index(i, j)] = f(grid->node(i), grid->t(j));
    return GridFunction(std::move(grid), std::move(v), continuous_intent);
  }

  const HalfSpaceGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double operator()(std::size_t i, std::size_t j) const { return v_[grid_->index(i, j)]; }
  double at(std::size_t flat) const { return v_[flat]; }
  std::span<const double> values() const { return v_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(v_).subspan(i * grid_->nt(), grid_->nt());
  }
  bool continuous_intent() const { return continuous_; }
  GridFunction with_continuity_intent(bool on = true) const;
  bool is_zero() const;

  GridFunction scaled(double c) const;
  GridFunction abs() const;
  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction operator*(const GridFunction& o) const;

 private:
  GridPtr grid_;
  std::vector<double> v_;
  bool continuous_ = false;
};

class SpatialFunction {
 public:
  SpatialFunction(GridPtr grid, std::vector<double> values);
  static SpatialFunction zeros(GridPtr grid);
  template <class F>
  static SpatialFunction sample(GridPtr grid, F&& f) {
    std::vector<double> v(grid->spatial_size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->node(i));
    return SpatialFunction(std::move(grid), std::move(v));
  }
  const HalfSpaceGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> values() const { return v_; }
  std::size_t size() const { return v_.size(); }
  SpatialFunction operator*(const SpatialFunction& o) const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<double> v_;
};

enum class MaskKind { Spatial, HalfSpace };

class RegionMask {
 public:
  RegionMask(GridPtr grid, MaskKind kind, std::vector<std::uint8_t> bits);
  static RegionMask empty(GridPtr grid, MaskKind kind);
  static RegionMask full(GridPtr grid, MaskKind kind);
  template <class P>
  static RegionMask spatial_from(GridPtr grid, P&& pred) {
    std::vector<std::uint8_t> b(grid->spatial_size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = pred(grid->node(i)) ? 1 : 0;
    return RegionMask(std::move(grid), MaskKind::Spatial, std::move(b));
  }
  template <class P>
  static RegionMask half_space_from(GridPtr grid, P&& pred) {
    std::vector<std::uint8_t> b(grid->size());
    for (std::size_t i = 0; i < grid->spatial_size(); ++i)
      for (std::size_t j = 0; j < grid->nt(); ++j)
        b[grid->index(i, j)] = pred(grid->node(i), grid->t(j)) ? 1 : 0;
    return RegionMask(std::move(grid), MaskKind::HalfSpace, std::move(b));
  }
  static RegionMask ball(GridPtr grid, const Ball& b);  // spatial mask of nodes in B

  const HalfSpaceGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  MaskKind kind() const { return kind_; }
  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;
  bool none() const { return count() == 0; }
  bool all() const { return count() == bits_.size(); }

  RegionMask complement() const;
  RegionMask unite(const RegionMask& o) const;
  RegionMask intersect(const RegionMask& o) const;
  RegionMask minus(const RegionMask& o) const;
  bool subset_of(const RegionMask& o) const;
  std::size_t symmetric_difference(const RegionMask& o) const;
  friend bool operator==(const RegionMask& a, const RegionMask& b) {
    return a.kind_ == b.kind_ && a.bits_ == b.bits_;
  }

 private:
  void check_compatible(const RegionMask& o) const;
  GridPtr grid_;
  MaskKind kind_;
  std::vector<std::uint8_t> bits_;
};

double halfspace_integral(const GridFunction& f);
double lp_gamma_norm(const SpatialFunction& g, double p);
GridFunction restrict(const GridFunction& f, const RegionMask& mask);

// Discrete gamma measure of a ball: the quadrature weights of the nodes
// strictly inside it. This is the measure the area functions divide by.
double grid_gamma(const HalfSpaceGrid& grid, const Ball& b);
double grid_gamma(const RegionMask& spatial_mask);
// gamma(A cap B) on the grid for a spatial mask A.
double grid_gamma(const RegionMask& spatial_mask, const Ball& b);

}  // namespace gtent
