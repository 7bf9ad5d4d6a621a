#pragma once

#include "gtent/functionals.hpp"

// Direct serial evaluations straight from the definitions: every vertex
// scans every grid node with the geometric predicates, no tables, no
// suffix sums. Kept as the baseline for tests and benchmarks.
namespace gtent::reference {

SpatialFunction area_S(const GridFunction& f, double q, const ConeSpec& spec);
SpatialFunction area_S_sup(const GridFunction& f, const ConeSpec& spec);
SpatialFunction carleson_C(const GridFunction& f, double q, double alpha, double beta, const BallDictionary& dict);

}  // namespace gtent::reference
