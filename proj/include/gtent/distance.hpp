#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gtent/grid.hpp"

namespace gtent {

// Exact Euclidean distance from every spatial node to the nearest node where
// seed is set (separable lower-envelope transform, one pass per axis).
// Nodes get +inf when the seed is empty.
std::vector<double> distance_to_nodes(const HalfSpaceGrid& grid, std::span<const std::uint8_t> seed);

// dist(x, O^c) at every spatial node: the smaller of the distance to the
// nearest node outside O and the distance to the box boundary (the region
// beyond the box counts as complement). Zero on nodes outside O.
SpatialFunction complement_distance(const RegionMask& spatial_mask);

// Same quantity at an arbitrary point (brute force over complement nodes).
double complement_distance_at(const RegionMask& spatial_mask, const Point& y);

bool mask_tent_contains(const RegionMask& spatial_mask, double alpha, double beta, const UpperPoint& p);

// Half-space node masks.
// Tent: dist(y, O^c) >= alpha t ^ beta m(y).
RegionMask mask_tent(const RegionMask& spatial_mask, double alpha, double beta);
// Open tent: dist(y, O^c) > alpha t ^ beta m(y).
RegionMask mask_open_tent(const RegionMask& spatial_mask, double alpha, double beta);
// Region R(F): union of pencil cones with vertices at nodes of F.
RegionMask mask_region(const RegionMask& spatial_mask, double alpha, double beta);

}  // namespace gtent
