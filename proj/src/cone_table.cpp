#include <algorithm>

#include "gtent/functionals.hpp"

namespace gtent {

ConeTable::ConeTable(GridPtr grid, double alpha, double beta, Exec exec)
    : grid_(std::move(grid)), alpha_(alpha), beta_(beta) {
  ConeSpec{alpha, beta}.validate();
  const auto& g = *grid_;
  std::size_t ns = g.spatial_size(), nt = g.nt();
  cap_.resize(ns);
  alpha_t_.resize(nt);
  radius_.resize(g.size());
  denom_.resize(g.size());
  for (std::size_t j = 0; j < nt; ++j) alpha_t_[j] = alpha * g.t(j);
  for (std::size_t i = 0; i < ns; ++i) cap_[i] = cutoff_m_beta(g.node(i), beta);

#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
  for (std::size_t i = 0; i < ns; ++i) {
    double prev_r = -1.0, prev_d = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      double r = std::min(alpha_t_[j], cap_[i]);
      std::size_t k = g.index(i, j);
      radius_[k] = r;
      if (r != prev_r) {
        prev_d = grid_gamma(g, Ball{g.node(i), r});
        prev_r = r;
      }
      denom_[k] = prev_d;
    }
  }
}

std::size_t ConeTable::first_above(double d) const {
  auto it = std::partition_point(alpha_t_.begin(), alpha_t_.end(), [d](double at) { return !(at > d); });
  return static_cast<std::size_t>(it - alpha_t_.begin());
}

}  // namespace gtent
