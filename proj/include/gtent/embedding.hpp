#pragma once

#include <cstddef>

#include "gtent/atomic.hpp"
#include "gtent/grid.hpp"

namespace gtent {

// phi(x) = c x exp(-1/(1 - x^2)) on (-1, 1), zero outside; c makes max |phi| = 1.
struct MotherFunction {
  double c = 1.0;
  double M = 1.0;  // bound on |phi| and |phi'|
  double operator()(double x) const;
  double derivative(double x) const;
};

MotherFunction default_phi();

struct EmbedOptions {
  // Keeps every t instead of the local region t < m(y). Only for the
  // mutation sentinel, which must then fail the support check.
  bool drop_local_truncation = false;
};

// u(x) = e^{x^2} sum_{(y,t) in D} f(y,t) e^{-y^2} phi((x - y)/t)/t dy dt/t, n = 1.
SpatialFunction pi_phi(const GridFunction& f, const MotherFunction& phi, EmbedOptions opts = {});

inline constexpr double kMeanTolerance = 1e-8;

struct H1AtomReport {
  bool support_ok = true;
  std::size_t support_violations = 0;
  double support_radius = 0.0;  // 2 r_B + one cell
  double mean = 0.0;            // int u dgamma
  double l1 = 0.0;
  bool mean_ok = true;
  double l2 = 0.0;
  double l2_constant = 0.0;     // ||u||_{L^2(gamma)} gamma(B)^{1/2}
  bool vacuous = false;
  bool pass() const { return support_ok && mean_ok; }
};

H1AtomReport check_h1_atom(const Atom& a, const MotherFunction& phi, EmbedOptions opts = {});

}  // namespace gtent
