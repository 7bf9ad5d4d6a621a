#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gtent/functionals.hpp"
#include "gtent/grid.hpp"

namespace gtent {

// Sparse grid function attached to a ball. Values live at the listed flat
// node indices and vanish elsewhere.
struct Atom {
  GridPtr grid;
  std::vector<std::size_t> support;
  std::vector<double> values;
  Ball ball;
  double q = 2.0;
  double delta = 1.0;
  double alpha = 1.0;
  double beta = 1.0;

  static Atom from_dense(const GridFunction& a, const Ball& b, double q, double delta, double alpha, double beta);
  GridFunction dense() const;
};

struct AtomReport {
  bool support_ok = true;
  bool norm_ok = true;
  bool area_ok = true;
  bool admissible_ok = true;
  std::size_t support_violations = 0;
  double norm_value = 0.0;  // ||a||_q on the grid
  double norm_bound = 0.0;  // gamma(B)^{-(1-1/q)}
  double area_l1 = 0.0;     // ||S_q a||_{L^1(gamma)}
  bool pass() const { return support_ok && norm_ok && area_ok && admissible_ok; }
};

inline constexpr double kNormSlack = 1e-9;
inline constexpr double kAreaSlack = 0.05;

AtomReport validate_atom(const Atom& a);

// The canonical atom chi_{T(B)} scaled to the norm bound.
Atom tent_indicator_atom(const GridPtr& grid, const Ball& b, double q, double alpha, double beta);

struct Term {
  double lambda = 0.0;
  Atom atom;
  int level = 0;
  std::size_t piece = 0;
};

struct LevelRecord {
  int k = 0;
  double o_mass = 0.0;  // gamma(O_k) on the grid
  std::size_t cubes = 0;
  std::size_t pieces = 0;
};

struct DecompositionAudit {
  bool nesting_ok = true;          // O_{k+1} subset O_k
  bool density_nesting_ok = true;  // same for the density-enlarged sets
  bool tent_inclusion_ok = true;
  std::size_t tent_violations = 0;
  bool cube_bracket_ok = true;
  bool partition_ok = true;        // q = inf: sum of bumps is 1 on supp f
  double partition_error = 0.0;
  bool sup_bound_ok = true;        // q = inf: |g phi| <= 2^{k+1}
  double mu_constant = 0.0;        // max mu / (gamma(B) 2^{qk})
  double residual_mass = 0.0;      // mass of f outside every band
  double total_mass = 0.0;
  double effective_delta = 0.0;    // max r_B / m(c_B)
  double eta = 0.0, eta_bar = 0.0, doubling = 0.0, inflation = 0.0;
  int k_lo = 0, k_hi = 0;
};

struct Decomposition {
  GridPtr grid;
  double q = 2.0;
  ConeSpec spec;
  std::vector<Term> terms;
  double source_norm = 0.0;
  std::vector<LevelRecord> levels;
  DecompositionAudit audit;
};

using KRange = std::pair<int, int>;

// Default level range from the positive values of S: [floor(log2 min) - 1, ceil(log2 max)].
std::optional<KRange> default_k_range(const SpatialFunction& s);

Decomposition decompose(const GridFunction& f, double q, const ConeSpec& spec, double eta = 0.5,
                        std::optional<KRange> k_range = std::nullopt);
Decomposition decompose_sup(const GridFunction& f, const ConeSpec& spec,
                            std::optional<KRange> k_range = std::nullopt, double c_overlap = 3.0);

GridFunction reconstruct(const Decomposition& d);

// Max |reconstruct(d) - f| over nodes covered by some atom or where f = 0.
double reconstruction_error(const Decomposition& d, const GridFunction& f);

struct CoefficientReport {
  double sum_abs_lambda = 0.0;
  double source_norm = 0.0;
  double ratio = 0.0;
  std::size_t terms = 0;
};

CoefficientReport coefficient_report(const Decomposition& d);

}  // namespace gtent
