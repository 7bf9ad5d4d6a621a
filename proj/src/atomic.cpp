#include "gtent/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gtent/distance.hpp"
#include "gtent/summation.hpp"
#include "gtent/whitney.hpp"

namespace gtent {

namespace {

double qpow(double a, double q) { return q == 1.0 ? a : std::pow(a, q); }

double norm_bound(double gamma_b, double q) {
  if (std::isinf(q)) return 1.0 / gamma_b;
  return std::pow(gamma_b, -(1.0 - 1.0 / q));
}

UpperPoint upper(const HalfSpaceGrid& g, std::size_t k) { return {g.node(k / g.nt()), g.t(k % g.nt())}; }

}  // namespace

Atom Atom::from_dense(const GridFunction& a, const Ball& b, double q, double delta, double alpha, double beta) {
  Atom out{a.grid_ptr(), {}, {}, b, q, delta, alpha, beta};
  for (std::size_t k = 0; k < a.values().size(); ++k)
    if (a.at(k) != 0.0) {
      out.support.push_back(k);
      out.values.push_back(a.at(k));
    }
  return out;
}

GridFunction Atom::dense() const {
  require(grid != nullptr, "atom has no grid");
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t n = 0; n < support.size(); ++n) v[support[n]] = values[n];
  return GridFunction(grid, std::move(v), std::isinf(q));
}

AtomReport validate_atom(const Atom& a) {
  require(a.grid != nullptr, "atom has no grid");
  require(a.support.size() == a.values.size(), "atom support and values differ in length");
  const auto& g = *a.grid;
  AtomReport r;
  r.admissible_ok = is_admissible(a.ball, a.delta);
  CompensatedSum mass;
  double sup = 0.0;
  bool zero = true;
  for (std::size_t n = 0; n < a.support.size(); ++n) {
    double v = std::abs(a.values[n]);
    if (v == 0.0) continue;
    zero = false;
    std::size_t k = a.support[n];
    if (!ball_tent_contains(a.ball, a.alpha, a.beta, upper(g, k))) ++r.support_violations;
    sup = std::max(sup, v);
    if (!std::isinf(a.q)) mass += qpow(v, a.q) * g.weight(k / g.nt(), k % g.nt());
  }
  r.support_ok = r.support_violations == 0;
  if (zero) return r;
  r.norm_value = std::isinf(a.q) ? sup : std::pow(mass.value(), 1.0 / a.q);
  r.norm_bound = norm_bound(grid_gamma(g, a.ball), a.q);
  r.norm_ok = r.norm_value <= r.norm_bound * (1.0 + kNormSlack);
  ConeSpec spec{a.alpha, a.beta};
  auto dense = a.dense();
  auto s = std::isinf(a.q) ? area_S_sup(dense, spec) : area_S(dense, a.q, spec);
  r.area_l1 = lp_gamma_norm(s, 1.0);
  r.area_ok = r.area_l1 <= 1.0 + kAreaSlack;
  return r;
}

Atom tent_indicator_atom(const GridPtr& grid, const Ball& b, double q, double alpha, double beta) {
  const auto& g = *grid;
  std::vector<std::size_t> idx;
  CompensatedSum w;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (ball_tent_contains(b, alpha, beta, upper(g, k))) {
      idx.push_back(k);
      w += g.weight(k / g.nt(), k % g.nt());
    }
  require(!idx.empty(), "tent of the ball contains no grid node");
  double bound = norm_bound(grid_gamma(g, b), q);
  double v = std::isinf(q) ? bound : bound / std::pow(w.value(), 1.0 / q);
  Atom a{grid, std::move(idx), {}, b, q, b.radius / cutoff_m(b.center), alpha, beta};
  a.values.assign(a.support.size(), v);
  return a;
}

std::optional<KRange> default_k_range(const SpatialFunction& s) {
  double lo = kInf, hi = 0.0;
  for (double v : s.values())
    if (v > 0.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi == 0.0) return std::nullopt;
  return KRange{static_cast<int>(std::floor(std::log2(lo))) - 1, static_cast<int>(std::ceil(std::log2(hi)))};
}

namespace {

RegionMask level_set(const SpatialFunction& s, int k) {
  double thr = std::ldexp(1.0, k);
  std::vector<std::uint8_t> b(s.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = s[i] > thr;
  return RegionMask(s.grid_ptr(), MaskKind::Spatial, std::move(b));
}

void finish_delta(Decomposition& d) {
  for (const auto& t : d.terms)
    d.audit.effective_delta = std::max(d.audit.effective_delta, t.atom.ball.radius / cutoff_m(t.atom.ball.center));
  for (auto& t : d.terms) t.atom.delta = d.audit.effective_delta;
}

struct Piece {
  std::vector<std::size_t> idx;
  std::vector<double> val;
};

}  // namespace

Decomposition decompose(const GridFunction& f, double q, const ConeSpec& spec, double eta,
                        std::optional<KRange> k_range) {
  spec.validate();
  require(q >= 1.0 && std::isfinite(q), "decompose needs q in [1, inf)");
  require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  const auto& g = f.grid();
  Decomposition d{f.grid_ptr(), q, spec, {}, 0.0, {}, {}};
  d.audit.eta = eta;
  auto S = area_S(f, q, spec);
  d.source_norm = lp_gamma_norm(S, 1.0);
  CompensatedSum total;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (f.at(k) != 0.0) total += qpow(std::abs(f.at(k)), q) * g.weight(k / g.nt(), k % g.nt());
  d.audit.total_mass = total.value();
  if (!k_range) k_range = default_k_range(S);
  if (!k_range || f.is_zero()) return d;
  auto [k_lo, k_hi] = *k_range;
  require(k_lo <= k_hi, "empty level range");
  d.audit.k_lo = k_lo;
  d.audit.k_hi = k_hi;

  double level = spec.beta * (1.0 + spec.beta);
  d.audit.doubling = doubling_constant(g, level, eta);
  d.audit.eta_bar = eta_bar_midpoint(d.audit.doubling);
  double C = 1.0 + 5.0 / (1.0 - eta);
  d.audit.inflation = C;
  double a_s = (1.0 - eta) * spec.alpha, b_s = (1.0 - eta) * spec.beta;

  std::size_t nl = static_cast<std::size_t>(k_hi - k_lo + 1);
  std::vector<RegionMask> O, Obar;
  std::vector<SpatialFunction> dist;
  std::vector<WhitneyCover> covers;
  std::vector<std::vector<std::int64_t>> owner;
  for (std::size_t l = 0; l < nl; ++l) {
    int k = k_lo + static_cast<int>(l);
    O.push_back(level_set(S, k));
    Obar.push_back(density_points(O.back().complement(), d.audit.eta_bar, level).complement());
    dist.push_back(complement_distance(Obar.back()));
    covers.push_back(whitney_cubes(Obar.back()));
    owner.push_back(covers.back().owner());
    if (!covers.back().cube_audit.bracket_ok) d.audit.cube_bracket_ok = false;
    d.levels.push_back({k, grid_gamma(Obar.back()), covers.back().cubes.size(), 0});
    if (l > 0) {
      if (!O[l].subset_of(O[l - 1])) d.audit.nesting_ok = false;
      if (!Obar[l].subset_of(Obar[l - 1])) d.audit.density_nesting_ok = false;
    }
  }
  auto ball_of = [&](std::size_t l, std::size_t c) {
    const auto& cube = covers[l].cubes[c];
    return Ball{cube.center(g), C * cube.diam()};
  };
  auto in_tent = [&](std::size_t l, std::size_t i, std::size_t j) {
    return dist[l][i] >= std::min(a_s * g.t(j), b_s * cutoff_m(g.node(i)));
  };

  // tent inclusion audit over every node of every shrunken tent
  std::size_t violations = 0;
#pragma omp parallel for reduction(+ : violations) schedule(dynamic, 8)
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t l = 0; l < nl; ++l) {
      if (dist[l][i] == 0.0) continue;
      for (std::size_t j = 0; j < g.nt(); ++j) {
        if (!in_tent(l, i, j)) continue;
        auto o = owner[l][i];
        if (o < 0 || !ball_tent_contains(ball_of(l, static_cast<std::size_t>(o)), spec.alpha, spec.beta,
                                         {g.node(i), g.t(j)}))
          ++violations;
      }
    }
  d.audit.tent_violations = violations;
  d.audit.tent_inclusion_ok = violations == 0;

  std::map<std::pair<std::size_t, std::size_t>, Piece> pieces;
  CompensatedSum residual;
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t j = 0; j < g.nt(); ++j) {
      std::size_t k = g.index(i, j);
      double v = f.at(k);
      if (v == 0.0) continue;
      std::size_t l = nl;
      while (l-- > 0 && !in_tent(l, i, j)) {
      }
      if (l >= nl || owner[l][i] < 0) {
        residual += qpow(std::abs(v), q) * g.weight(i, j);
        continue;
      }
      auto& p = pieces[{l, static_cast<std::size_t>(owner[l][i])}];
      p.idx.push_back(k);
      p.val.push_back(v);
    }
  d.audit.residual_mass = residual.value();

  for (auto& [key, p] : pieces) {
    auto [l, c] = key;
    CompensatedSum mu;
    for (std::size_t n = 0; n < p.idx.size(); ++n)
      mu += qpow(std::abs(p.val[n]), q) * g.weight(p.idx[n] / g.nt(), p.idx[n] % g.nt());
    if (mu.value() == 0.0) continue;
    Ball b = ball_of(l, c);
    double gb = grid_gamma(g, b);
    double lambda = std::pow(gb, 1.0 - 1.0 / q) * std::pow(mu.value(), 1.0 / q);
    int k = k_lo + static_cast<int>(l);
    d.audit.mu_constant = std::max(d.audit.mu_constant, mu.value() / (gb * std::pow(2.0, q * k)));
    Atom a{d.grid, std::move(p.idx), std::move(p.val), b, q, 0.0, spec.alpha, spec.beta};
    for (double& v : a.values) v /= lambda;
    d.terms.push_back({lambda, std::move(a), k, c});
    ++d.levels[l].pieces;
  }
  finish_delta(d);
  return d;
}

Decomposition decompose_sup(const GridFunction& f, const ConeSpec& spec, std::optional<KRange> k_range,
                            double c_overlap) {
  spec.validate();
  require(f.continuous_intent(), "the q = inf decomposition requires a continuous-intent function");
  const auto& g = f.grid();
  Decomposition d{f.grid_ptr(), kInf, spec, {}, 0.0, {}, {}};
  auto S = area_S_sup(f, spec);
  d.source_norm = lp_gamma_norm(S, 1.0);
  CompensatedSum total;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (f.at(k) != 0.0) total += std::abs(f.at(k)) * g.weight(k / g.nt(), k % g.nt());
  d.audit.total_mass = total.value();
  if (!k_range) k_range = default_k_range(S);
  if (!k_range || f.is_zero()) return d;
  auto [k_lo, k_hi] = *k_range;
  require(k_lo <= k_hi, "empty level range");
  d.audit.k_lo = k_lo;
  d.audit.k_hi = k_hi;
  d.audit.inflation = 2.0 * c_overlap + 3.0;

  std::size_t nl = static_cast<std::size_t>(k_hi - k_lo + 1);
  std::vector<SpatialFunction> dist;
  std::vector<WhitneyCover> covers;
  std::vector<std::vector<std::vector<std::size_t>>> balls_at;  // per level, per node: ball ids
  for (std::size_t l = 0; l < nl; ++l) {
    int k = k_lo + static_cast<int>(l);
    auto O = level_set(S, k);
    if (l > 0 && !O.subset_of(covers.back().target)) d.audit.nesting_ok = false;
    dist.push_back(complement_distance(O));
    covers.push_back(whitney_balls(O, c_overlap));
    std::vector<std::vector<std::size_t>> at(g.spatial_size());
    for (std::size_t b = 0; b < covers.back().nodes.size(); ++b)
      for (std::size_t i : covers.back().nodes[b]) at[i].push_back(b);
    balls_at.push_back(std::move(at));
    d.levels.push_back({k, grid_gamma(O), covers.back().balls.size(), 0});
  }
  auto cone_r = [&](std::size_t i, std::size_t j) { return std::min(spec.alpha * g.t(j), spec.beta * cutoff_m(g.node(i))); };

  std::map<std::pair<std::size_t, std::size_t>, Piece> pieces;
  CompensatedSum residual;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> parts;
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t j = 0; j < g.nt(); ++j) {
      std::size_t k = g.index(i, j);
      double v = f.at(k);
      if (v == 0.0) continue;
      double r = cone_r(i, j);
      parts.clear();
      double total_psi = 0.0;
      for (std::size_t l = 0; l < nl; ++l) {
        if (!(dist[l][i] > 0.5 * r)) continue;
        if (l + 1 < nl && dist[l + 1][i] >= r) continue;
        for (std::size_t b : balls_at[l][i]) {
          const Ball& B = covers[l].balls[b];
          double psi = 1.0 - distance(g.node(i), B.center) / B.radius;
          if (psi <= 0.0) continue;
          parts.push_back({{l, b}, psi});
          total_psi += psi;
        }
      }
      if (parts.empty()) {
        residual += std::abs(v) * g.weight(i, j);
        continue;
      }
      double sum_phi = 0.0;
      for (auto& [key, psi] : parts) {
        double phi = psi / total_psi;
        sum_phi += phi;
        if (std::abs(v * phi) > std::ldexp(1.0, k_lo + static_cast<int>(key.first) + 1)) d.audit.sup_bound_ok = false;
        auto& p = pieces[key];
        p.idx.push_back(k);
        p.val.push_back(v * phi);
      }
      d.audit.partition_error = std::max(d.audit.partition_error, std::abs(sum_phi - 1.0));
    }
  d.audit.residual_mass = residual.value();
  d.audit.partition_ok = d.audit.partition_error <= 1e-12;

  std::size_t violations = 0;
  for (auto& [key, p] : pieces) {
    auto [l, b] = key;
    Ball big = scaled(covers[l].balls[b], d.audit.inflation);
    int k = k_lo + static_cast<int>(l);
    double lambda = std::ldexp(1.0, k + 1) * grid_gamma(g, big);
    for (std::size_t n = 0; n < p.idx.size(); ++n)
      if (!ball_tent_contains(big, spec.alpha, spec.beta, upper(g, p.idx[n]))) ++violations;
    Atom a{d.grid, std::move(p.idx), std::move(p.val), big, kInf, 0.0, spec.alpha, spec.beta};
    for (double& v : a.values) v /= lambda;
    d.terms.push_back({lambda, std::move(a), k, b});
    ++d.levels[l].pieces;
  }
  d.audit.tent_violations = violations;
  d.audit.tent_inclusion_ok = violations == 0;
  finish_delta(d);
  return d;
}

GridFunction reconstruct(const Decomposition& d) {
  require(d.grid != nullptr, "decomposition has no grid");
  std::vector<double> v(d.grid->size(), 0.0);
  for (const auto& t : d.terms) {
    require(t.atom.grid && t.atom.grid->same_as(*d.grid), "atom grid differs from the decomposition grid");
    for (std::size_t n = 0; n < t.atom.support.size(); ++n) v[t.atom.support[n]] += t.lambda * t.atom.values[n];
  }
  return GridFunction(d.grid, std::move(v), std::isinf(d.q));
}

double reconstruction_error(const Decomposition& d, const GridFunction& f) {
  require_same_grid(f.grid(), *d.grid);
  auto rec = reconstruct(d);
  std::vector<std::uint8_t> covered(f.values().size(), 0);
  for (const auto& t : d.terms)
    for (std::size_t k : t.atom.support) covered[k] = 1;
  double err = 0.0;
  for (std::size_t k = 0; k < covered.size(); ++k)
    if (covered[k] || f.at(k) == 0.0) err = std::max(err, std::abs(rec.at(k) - f.at(k)));
  return err;
}

CoefficientReport coefficient_report(const Decomposition& d) {
  CoefficientReport r;
  CompensatedSum s;
  for (const auto& t : d.terms) s += std::abs(t.lambda);
  r.sum_abs_lambda = s.value();
  r.source_norm = d.source_norm;
  r.terms = d.terms.size();
  r.ratio = d.source_norm > 0.0 ? r.sum_abs_lambda / d.source_norm : 0.0;
  return r;
}

}  // namespace gtent
