#include "gtent/grid.hpp"

#include <algorithm>
#include <cmath>

#include "gtent/summation.hpp"

namespace gtent {

namespace {

std::vector<double> trapezoid(std::size_t n, double h) {
  std::vector<double> w(n, h);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace

std::shared_ptr<const HalfSpaceGrid> HalfSpaceGrid::make(std::vector<Axis> axes, double t_min,
                                                         double t_max, std::size_t nt) {
  require(axes.size() == 1 || axes.size() == 2, "grid dimension must be 1 or 2");
  for (const auto& a : axes) {
    require(std::isfinite(a.lo) && std::isfinite(a.hi) && a.lo < a.hi, "spatial box must be a nonempty interval");
    require(a.count >= 2, "nx must be at least 2");
  }
  require(std::isfinite(t_min) && std::isfinite(t_max) && 0.0 < t_min && t_min < t_max,
          "t range must satisfy 0 < t_min < t_max");
  require(nt >= 2, "nt must be at least 2");

  auto g = std::shared_ptr<HalfSpaceGrid>(new HalfSpaceGrid());
  g->axes_ = std::move(axes);
  std::vector<std::vector<double>> wa;
  for (const auto& a : g->axes_) wa.push_back(trapezoid(a.count, a.spacing()));
  if (g->dim() == 1) {
    const Axis& a = g->axes_[0];
    for (std::size_t i = 0; i < a.count; ++i) {
      g->nodes_.emplace_back(a.node(i));
      g->w_leb_.push_back(wa[0][i]);
    }
  } else {
    const Axis& ax = g->axes_[0];
    const Axis& ay = g->axes_[1];
    for (std::size_t i = 0; i < ax.count; ++i)
      for (std::size_t k = 0; k < ay.count; ++k) {
        g->nodes_.emplace_back(ax.node(i), ay.node(k));
        g->w_leb_.push_back(wa[0][i] * wa[1][k]);
      }
  }
  for (std::size_t i = 0; i < g->nodes_.size(); ++i)
    g->w_gauss_.push_back(g->w_leb_[i] * std::exp(-g->nodes_[i].norm2()));

  double l0 = std::log(t_min), l1 = std::log(t_max);
  g->log_step_ = (l1 - l0) / static_cast<double>(nt - 1);
  for (std::size_t j = 0; j < nt; ++j) g->t_.push_back(std::exp(l0 + static_cast<double>(j) * g->log_step_));
  g->t_.front() = t_min;
  g->t_.back() = t_max;
  g->w_t_ = trapezoid(nt, g->log_step_);
  return g;
}

std::shared_ptr<const HalfSpaceGrid> HalfSpaceGrid::desk_default() {
  return make({Axis{-8.0, 8.0, 512}}, 1e-3, 8.0, 128);
}

std::shared_ptr<const HalfSpaceGrid> HalfSpaceGrid::refined() const {
  std::vector<Axis> ax = axes_;
  for (auto& a : ax) a.count *= 2;
  return make(ax, t_min(), t_max(), 2 * nt());
}

std::shared_ptr<const HalfSpaceGrid> HalfSpaceGrid::with_counts(std::size_t nx, std::size_t nt) const {
  std::vector<Axis> ax = axes_;
  for (auto& a : ax) a.count = nx;
  return make(ax, t_min(), t_max(), nt);
}

double HalfSpaceGrid::cell() const {
  double h = axes_[0].spacing();
  for (const auto& a : axes_) h = std::min(h, a.spacing());
  return h;
}

std::size_t HalfSpaceGrid::flat(std::size_t ix, std::size_t iy) const {
  return dim() == 1 ? ix : ix * axes_[1].count + iy;
}

std::array<std::size_t, 2> HalfSpaceGrid::multi(std::size_t i) const {
  if (dim() == 1) return {i, 0};
  return {i / axes_[1].count, i % axes_[1].count};
}

bool HalfSpaceGrid::inside_box(const Point& y) const {
  for (int a = 0; a < dim(); ++a)
    if (y[a] < axis(a).lo || y[a] > axis(a).hi) return false;
  return true;
}

double HalfSpaceGrid::distance_to_box_boundary(const Point& y) const {
  double d = kInf;
  for (int a = 0; a < dim(); ++a) d = std::min({d, y[a] - axis(a).lo, axis(a).hi - y[a]});
  return std::max(d, 0.0);
}

std::size_t HalfSpaceGrid::nearest_node(const Point& y) const {
  std::array<std::size_t, 2> ix{0, 0};
  for (int a = 0; a < dim(); ++a) {
    const Axis& ax = axis(a);
    double s = std::round((y[a] - ax.lo) / ax.spacing());
    s = std::clamp(s, 0.0, static_cast<double>(ax.count - 1));
    ix[static_cast<std::size_t>(a)] = static_cast<std::size_t>(s);
  }
  return flat(ix[0], ix[1]);
}

std::size_t HalfSpaceGrid::nearest_t(double t) const {
  double s = std::round((std::log(t) - std::log(t_min())) / log_step_);
  s = std::clamp(s, 0.0, static_cast<double>(nt() - 1));
  return static_cast<std::size_t>(s);
}

void HalfSpaceGrid::ball_index_box(const Ball& b, std::array<std::size_t, 2>& lo,
                                   std::array<std::size_t, 2>& hi) const {
  lo = {0, 0};
  hi = {0, 0};
  for (int a = 0; a < dim(); ++a) {
    const Axis& ax = axis(a);
    double h = ax.spacing();
    double l = std::floor((b.center[a] - b.radius - ax.lo) / h) - 1.0;
    double u = std::ceil((b.center[a] + b.radius - ax.lo) / h) + 1.0;
    l = std::clamp(l, 0.0, static_cast<double>(ax.count - 1));
    u = std::clamp(u, 0.0, static_cast<double>(ax.count - 1));
    lo[static_cast<std::size_t>(a)] = static_cast<std::size_t>(l);
    hi[static_cast<std::size_t>(a)] = static_cast<std::size_t>(u);
  }
}

void HalfSpaceGrid::for_each_in_ball(const Ball& b, const std::function<void(std::size_t)>& f) const {
  std::array<std::size_t, 2> lo, hi;
  ball_index_box(b, lo, hi);
  for (std::size_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::size_t iy = lo[1]; iy <= hi[1]; ++iy) {
      std::size_t i = flat(ix, iy);
      if (distance(nodes_[i], b.center) < b.radius) f(i);
    }
}

void require_same_grid(const HalfSpaceGrid& a, const HalfSpaceGrid& b) {
  if (&a != &b && !a.same_as(b)) throw PreconditionError("grid mismatch");
}

// GridFunction

GridFunction::GridFunction(GridPtr grid, std::vector<double> values, bool continuous_intent)
    : grid_(std::move(grid)), v_(std::move(values)), continuous_(continuous_intent) {
  require(grid_ != nullptr, "grid function needs a grid");
  require(v_.size() == grid_->size(), "grid function size does not match its grid");
  for (double x : v_) require(std::isfinite(x), "grid function values must be finite");
}

GridFunction GridFunction::zeros(GridPtr grid) {
  std::size_t n = grid->size();
  return GridFunction(std::move(grid), std::vector<double>(n, 0.0));
}

GridFunction GridFunction::with_continuity_intent(bool on) const { return GridFunction(grid_, v_, on); }

bool GridFunction::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(v_);
  for (double& x : v) x *= c;
  return GridFunction(grid_, std::move(v), continuous_);
}

GridFunction GridFunction::abs() const {
  std::vector<double> v(v_);
  for (double& x : v) x = std::abs(x);
  return GridFunction(grid_, std::move(v), continuous_);
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
  require_same_grid(*grid_, *o.grid_);
  std::vector<double> v(v_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += o.v_[k];
  return GridFunction(grid_, std::move(v), continuous_ && o.continuous_);
}

GridFunction GridFunction::operator-(const GridFunction& o) const { return *this + o.scaled(-1.0); }

GridFunction GridFunction::operator*(const GridFunction& o) const {
  require_same_grid(*grid_, *o.grid_);
  std::vector<double> v(v_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= o.v_[k];
  return GridFunction(grid_, std::move(v), continuous_ && o.continuous_);
}

// SpatialFunction

SpatialFunction::SpatialFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  require(grid_ != nullptr, "spatial function needs a grid");
  require(v_.size() == grid_->spatial_size(), "spatial function size does not match its grid");
  for (double x : v_) require(!std::isnan(x), "spatial function values must not be NaN");
}

SpatialFunction SpatialFunction::zeros(GridPtr grid) {
  std::size_t n = grid->spatial_size();
  return SpatialFunction(std::move(grid), std::vector<double>(n, 0.0));
}

SpatialFunction SpatialFunction::operator*(const SpatialFunction& o) const {
  require_same_grid(*grid_, *o.grid_);
  std::vector<double> v(v_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= o.v_[k];
  return SpatialFunction(grid_, std::move(v));
}

double SpatialFunction::max() const { return *std::max_element(v_.begin(), v_.end()); }

// RegionMask

RegionMask::RegionMask(GridPtr grid, MaskKind kind, std::vector<std::uint8_t> bits)
    : grid_(std::move(grid)), kind_(kind), bits_(std::move(bits)) {
  require(grid_ != nullptr, "mask needs a grid");
  std::size_t n = kind_ == MaskKind::Spatial ? grid_->spatial_size() : grid_->size();
  require(bits_.size() == n, "mask size does not match its grid");
  for (auto& b : bits_) b = b ? 1 : 0;
}

RegionMask RegionMask::empty(GridPtr grid, MaskKind kind) {
  std::size_t n = kind == MaskKind::Spatial ? grid->spatial_size() : grid->size();
  return RegionMask(std::move(grid), kind, std::vector<std::uint8_t>(n, 0));
}

RegionMask RegionMask::full(GridPtr grid, MaskKind kind) {
  std::size_t n = kind == MaskKind::Spatial ? grid->spatial_size() : grid->size();
  return RegionMask(std::move(grid), kind, std::vector<std::uint8_t>(n, 1));
}

RegionMask RegionMask::ball(GridPtr grid, const Ball& b) {
  return spatial_from(grid, [&](const Point& x) { return distance(x, b.center) < b.radius; });
}

std::size_t RegionMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void RegionMask::check_compatible(const RegionMask& o) const {
  require_same_grid(*grid_, *o.grid_);
  require(kind_ == o.kind_, "mask kinds differ");
}

RegionMask RegionMask::complement() const {
  std::vector<std::uint8_t> b(bits_);
  for (auto& x : b) x = 1 - x;
  return RegionMask(grid_, kind_, std::move(b));
}

RegionMask RegionMask::unite(const RegionMask& o) const {
  check_compatible(o);
  std::vector<std::uint8_t> b(bits_);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] |= o.bits_[k];
  return RegionMask(grid_, kind_, std::move(b));
}

RegionMask RegionMask::intersect(const RegionMask& o) const {
  check_compatible(o);
  std::vector<std::uint8_t> b(bits_);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] &= o.bits_[k];
  return RegionMask(grid_, kind_, std::move(b));
}

RegionMask RegionMask::minus(const RegionMask& o) const {
  check_compatible(o);
  std::vector<std::uint8_t> b(bits_);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] &= 1 - o.bits_[k];
  return RegionMask(grid_, kind_, std::move(b));
}

bool RegionMask::subset_of(const RegionMask& o) const {
  check_compatible(o);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] && !o.bits_[k]) return false;
  return true;
}

std::size_t RegionMask::symmetric_difference(const RegionMask& o) const {
  check_compatible(o);
  std::size_t n = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) n += bits_[k] != o.bits_[k];
  return n;
}

// Quadrature

double halfspace_integral(const GridFunction& f) {
  const auto& g = f.grid();
  CompensatedSum s;
  for (std::size_t i = 0; i < g.spatial_size(); ++i) {
    auto r = f.row(i);
    for (std::size_t j = 0; j < g.nt(); ++j)
      if (r[j] != 0.0) s += r[j] * g.weight(i, j);
  }
  return s.value();
}

double lp_gamma_norm(const SpatialFunction& g, double p) {
  require(p >= 1.0, "L^p norm needs p >= 1");
  const auto& grid = g.grid();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : g.values()) m = std::max(m, std::abs(x));
    return m;
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double a = std::abs(g[i]);
    if (a == 0.0) continue;
    s += (p == 1.0 ? a : std::pow(a, p)) * grid.spatial_weight(i);
  }
  return p == 1.0 ? s.value() : std::pow(s.value(), 1.0 / p);
}

GridFunction restrict(const GridFunction& f, const RegionMask& mask) {
  require_same_grid(f.grid(), mask.grid());
  const auto& g = f.grid();
  std::vector<double> v(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t j = 0; j < g.nt(); ++j) {
      bool in = mask.kind() == MaskKind::Spatial ? mask[i] : mask[g.index(i, j)];
      if (!in) v[g.index(i, j)] = 0.0;
    }
  return GridFunction(f.grid_ptr(), std::move(v), f.continuous_intent());
}

double grid_gamma(const HalfSpaceGrid& grid, const Ball& b) {
  double s = 0.0;
  std::array<std::size_t, 2> lo, hi;
  grid.ball_index_box(b, lo, hi);
  for (std::size_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::size_t iy = lo[1]; iy <= hi[1]; ++iy) {
      std::size_t i = grid.flat(ix, iy);
      if (distance(grid.node(i), b.center) < b.radius) s += grid.spatial_weight(i);
    }
  return s;
}

double grid_gamma(const RegionMask& m) {
  require(m.kind() == MaskKind::Spatial, "gamma of a mask needs a spatial mask");
  CompensatedSum s;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) s += m.grid().spatial_weight(i);
  return s.value();
}

double grid_gamma(const RegionMask& m, const Ball& b) {
  require(m.kind() == MaskKind::Spatial, "gamma of a mask needs a spatial mask");
  const auto& grid = m.grid();
  double s = 0.0;
  std::array<std::size_t, 2> lo, hi;
  grid.ball_index_box(b, lo, hi);
  for (std::size_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::size_t iy = lo[1]; iy <= hi[1]; ++iy) {
      std::size_t i = grid.flat(ix, iy);
      if (m[i] && distance(grid.node(i), b.center) < b.radius) s += grid.spatial_weight(i);
    }
  return s;
}

}  // namespace gtent
