#include "gtent/distance.hpp"

#include <algorithm>
#include <cmath>

namespace gtent {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Nearest seed along a 1-D line of n entries; returns seed positions.
std::vector<std::size_t> nearest_on_line(std::size_t n, const std::function<bool(std::size_t)>& seed) {
  std::vector<std::size_t> left(n, kNone), out(n, kNone);
  std::size_t last = kNone;
  for (std::size_t k = 0; k < n; ++k) {
    if (seed(k)) last = k;
    left[k] = last;
  }
  last = kNone;
  for (std::size_t k = n; k-- > 0;) {
    if (seed(k)) last = k;
    std::size_t l = left[k], r = last;
    if (l == kNone)
      out[k] = r;
    else if (r == kNone)
      out[k] = l;
    else
      out[k] = (k - l) <= (r - k) ? l : r;
  }
  return out;
}

// Lower envelope of parabolas (p - q h)^2 + f(q); returns argmin per position.
std::vector<std::size_t> envelope_argmin(const std::vector<double>& f, double h) {
  std::size_t n = f.size();
  std::vector<std::size_t> v;
  std::vector<double> z;
  for (std::size_t q = 0; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    double pq = static_cast<double>(q) * h;
    while (!v.empty()) {
      double pv = static_cast<double>(v.back()) * h;
      double s = ((f[q] + pq * pq) - (f[v.back()] + pv * pv)) / (2.0 * (pq - pv));
      if (s <= z.back()) {
        v.pop_back();
        z.pop_back();
      } else {
        z.push_back(s);
        break;
      }
    }
    if (v.empty()) z.push_back(-kInf);
    v.push_back(q);
  }
  std::vector<std::size_t> arg(n, kNone);
  if (v.empty()) return arg;
  std::size_t k = 0;
  for (std::size_t p = 0; p < n; ++p) {
    double x = static_cast<double>(p) * h;
    while (k + 1 < v.size() && z[k + 1] < x) ++k;
    arg[p] = v[k];
  }
  return arg;
}

// Index of the nearest seed node for every spatial node (kNone if no seed).
std::vector<std::size_t> nearest_seed(const HalfSpaceGrid& g, std::span<const std::uint8_t> seed) {
  if (g.dim() == 1) return nearest_on_line(g.spatial_size(), [&](std::size_t k) { return seed[k] != 0; });
  std::size_t nx = g.axis(0).count, ny = g.axis(1).count;
  double hx = g.axis(0).spacing(), hy = g.axis(1).spacing();
  // Pass 1: nearest seed within each column x = const.
  std::vector<std::size_t> col(nx * ny, kNone);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    auto line = nearest_on_line(ny, [&](std::size_t iy) { return seed[g.flat(ix, iy)] != 0; });
    for (std::size_t iy = 0; iy < ny; ++iy) col[g.flat(ix, iy)] = line[iy];
  }
  // Pass 2: envelope across columns.
  std::vector<std::size_t> out(nx * ny, kNone);
  std::vector<double> f(nx);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      std::size_t s = col[g.flat(ix, iy)];
      double dy = s == kNone ? kInf : (static_cast<double>(s) - static_cast<double>(iy)) * hy;
      f[ix] = s == kNone ? kInf : dy * dy;
    }
    auto arg = envelope_argmin(f, hx);
    for (std::size_t ix = 0; ix < nx; ++ix)
      if (arg[ix] != kNone) out[g.flat(ix, iy)] = g.flat(arg[ix], col[g.flat(arg[ix], iy)]);
  }
  return out;
}

}  // namespace

std::vector<double> distance_to_nodes(const HalfSpaceGrid& g, std::span<const std::uint8_t> seed) {
  require(seed.size() == g.spatial_size(), "seed size does not match grid");
  auto near = nearest_seed(g, seed);
  std::vector<double> d(g.spatial_size(), kInf);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (near[i] != kNone) d[i] = distance(g.node(i), g.node(near[i]));
  return d;
}

SpatialFunction complement_distance(const RegionMask& m) {
  require(m.kind() == MaskKind::Spatial, "complement distance needs a spatial mask");
  const auto& g = m.grid();
  std::vector<std::uint8_t> outside(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) outside[i] = m[i] ? 0 : 1;
  auto d = distance_to_nodes(g, outside);
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = m[i] ? std::min(d[i], g.distance_to_box_boundary(g.node(i))) : 0.0;
  return SpatialFunction(m.grid_ptr(), std::move(d));
}

double complement_distance_at(const RegionMask& m, const Point& y) {
  require(m.kind() == MaskKind::Spatial, "complement distance needs a spatial mask");
  const auto& g = m.grid();
  double d = g.distance_to_box_boundary(y);
  for (std::size_t i = 0; i < m.size() && d > 0.0; ++i)
    if (!m[i]) d = std::min(d, distance(y, g.node(i)));
  return d;
}

bool mask_tent_contains(const RegionMask& m, double alpha, double beta, const UpperPoint& p) {
  double d = complement_distance_at(m, p.y);
  return d >= std::min(alpha * p.t, cutoff_m_beta(p.y, beta));
}

namespace {

template <class Pred>
RegionMask tent_like(const RegionMask& m, const std::vector<double>& d, double alpha, double beta, Pred pred) {
  const auto& g = m.grid();
  std::vector<std::uint8_t> b(g.size(), 0);
  for (std::size_t i = 0; i < g.spatial_size(); ++i) {
    double cap = cutoff_m_beta(g.node(i), beta);
    for (std::size_t j = 0; j < g.nt(); ++j) b[g.index(i, j)] = pred(d[i], std::min(alpha * g.t(j), cap)) ? 1 : 0;
  }
  return RegionMask(m.grid_ptr(), MaskKind::HalfSpace, std::move(b));
}

}  // namespace

RegionMask mask_tent(const RegionMask& m, double alpha, double beta) {
  auto d = complement_distance(m);
  std::vector<double> dv(d.values().begin(), d.values().end());
  return tent_like(m, dv, alpha, beta, [](double dist, double r) { return dist >= r; });
}

RegionMask mask_open_tent(const RegionMask& m, double alpha, double beta) {
  auto d = complement_distance(m);
  std::vector<double> dv(d.values().begin(), d.values().end());
  return tent_like(m, dv, alpha, beta, [](double dist, double r) { return dist > r; });
}

RegionMask mask_region(const RegionMask& m, double alpha, double beta) {
  require(m.kind() == MaskKind::Spatial, "region needs a spatial mask");
  auto d = distance_to_nodes(m.grid(), m.bits());
  return tent_like(m, d, alpha, beta, [](double dist, double r) { return dist < r; });
}

}  // namespace gtent
