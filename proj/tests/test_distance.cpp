#include <doctest.h>

#include <cmath>

#include "gtent/distance.hpp"
#include "gtent/generators.hpp"

using namespace gtent;

namespace {

std::vector<double> brute_distance(const HalfSpaceGrid& g, std::span<const std::uint8_t> seed) {
  std::vector<double> d(g.spatial_size(), kInf);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < d.size(); ++k)
      if (seed[k]) d[i] = std::min(d[i], distance(g.node(i), g.node(k)));
  return d;
}

}  // namespace

TEST_CASE("distance transform matches brute force") {
  Rng rng(4);
  auto g1 = HalfSpaceGrid::make({Axis{-3.0, 3.0, 97}}, 1e-2, 1.0, 4);
  auto g2 = HalfSpaceGrid::make({Axis{-2.0, 2.0, 31}, Axis{-1.0, 2.0, 23}}, 1e-2, 1.0, 4);
  for (const auto& g : {g1, g2})
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::uint8_t> seed(g->spatial_size());
      double density = trial == 0 ? 0.01 : 0.1 * trial;
      for (auto& s : seed) s = uniform(rng, 0.0, 1.0) < density ? 1 : 0;
      auto fast = distance_to_nodes(*g, seed);
      auto slow = brute_distance(*g, seed);
      for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
    }
  std::vector<std::uint8_t> empty(g1->spatial_size(), 0);
  for (double v : distance_to_nodes(*g1, empty)) CHECK(std::isinf(v));
}

TEST_CASE("complement distance includes the box boundary") {
  auto g = HalfSpaceGrid::make({Axis{-4.0, 4.0, 81}}, 1e-2, 4.0, 8);
  auto all = RegionMask::full(g, MaskKind::Spatial);
  auto d = complement_distance(all);
  for (std::size_t i = 0; i < g->spatial_size(); ++i)
    CHECK(d[i] == doctest::Approx(g->distance_to_box_boundary(g->node(i))));
  auto o = RegionMask::spatial_from(g, [](const Point& y) { return std::abs(y[0]) < 1.0; });
  auto d2 = complement_distance(o);
  for (std::size_t i = 0; i < g->spatial_size(); ++i) {
    CHECK(d2[i] == doctest::Approx(complement_distance_at(o, g->node(i))));
    if (!o[i]) CHECK(d2[i] == 0.0);
  }
  // nearest outside nodes are +-1.0
  CHECK(d2[g->nearest_node(Point(0.0))] == doctest::Approx(1.0));
}

TEST_CASE("mask tent agrees with the ball formula up to a cell") {
  auto g = HalfSpaceGrid::make({Axis{-4.0, 4.0, 801}}, 1e-3, 4.0, 64);
  Ball b{Point(0.0), 1.0};
  auto o = RegionMask::ball(g, b);
  auto t = mask_tent(o, 1.0, 1.0);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < g->spatial_size(); ++i)
    for (std::size_t j = 0; j < g->nt(); ++j) {
      UpperPoint p{g->node(i), g->t(j)};
      bool in_ball = ball_tent_contains(b, 1.0, 1.0, p);
      if (in_ball == t[g->index(i, j)]) continue;
      // a disagreement must sit within one cell of the tent boundary
      Ball grown{b.center, b.radius + g->cell()}, shrunk{b.center, b.radius - g->cell()};
      if (ball_tent_contains(grown, 1.0, 1.0, p) == ball_tent_contains(shrunk, 1.0, 1.0, p)) ++bad;
    }
  CHECK(bad == 0);
}

TEST_CASE("open tent and region masks") {
  auto g = HalfSpaceGrid::make({Axis{-4.0, 4.0, 161}}, 1e-2, 4.0, 32);
  auto o = RegionMask::ball(g, Ball{Point(0.5), 1.2});
  auto closed = mask_tent(o, 1.0, 1.0), open = mask_open_tent(o, 1.0, 1.0);
  CHECK(open.subset_of(closed));
  for (std::size_t k = 0; k < closed.size(); ++k)
    if (closed[k]) CHECK(mask_tent_contains(o, 1.0, 1.0, UpperPoint{g->node(k / g->nt()), g->t(k % g->nt())}));
  // region over F: the nodes in a cone with vertex in F
  auto f = RegionMask::spatial_from(g, [](const Point& y) { return std::abs(y[0] - 2.0) < 0.3; });
  auto r = mask_region(f, 1.0, 1.0);
  ConeSpec spec{1.0, 1.0};
  for (std::size_t i = 0; i < g->spatial_size(); i += 7)
    for (std::size_t j = 0; j < g->nt(); j += 3) {
      UpperPoint p{g->node(i), g->t(j)};
      bool want = false;
      for (std::size_t v = 0; v < g->spatial_size() && !want; ++v)
        want = f[v] && cone_contains(g->node(v), spec, p);
      CHECK(r[g->index(i, j)] == want);
    }
}
