#include "gtent/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>

#include "gtent/atomic.hpp"
#include "gtent/duality.hpp"
#include "gtent/embedding.hpp"
#include "gtent/generators.hpp"
#include "gtent/whitney.hpp"

namespace gtent {

namespace {

struct Ctx {
  GridPtr grid;
  GridPtr fine;
  std::uint64_t seed = 42;
  std::string mutation;

  Rng rng(std::size_t suite) const { return Rng(seed ^ (0x9E3779B97F4A7C15ULL * (suite + 1))); }
};

double pick(Rng& rng, std::initializer_list<double> xs) {
  auto n = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(xs.size())));
  return *(xs.begin() + std::min(n, xs.size() - 1));
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 1.0;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : kInf;
}

double drift(double coarse, double fine) { return coarse > 0.0 ? std::abs(fine / coarse - 1.0) : (fine == 0.0 ? 0.0 : kInf); }

Json array_of(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(number(x));
  return j;
}

// Atom on T(B) with the given node profile, scaled to the norm bound.
Atom profiled_atom(const GridPtr& grid, const Ball& b, double q, double delta, double alpha, double beta,
                   const std::function<double(const Point&, double)>& profile) {
  const auto& g = *grid;
  Atom a{grid, {}, {}, b, q, delta, alpha, beta};
  g.for_each_in_ball(b, [&](std::size_t i) {
    for (std::size_t j = 0; j < g.nt(); ++j) {
      UpperPoint p{g.node(i), g.t(j)};
      if (!ball_tent_contains(b, alpha, beta, p)) continue;
      double v = profile(p.y, p.t);
      if (v == 0.0) continue;
      a.support.push_back(g.index(i, j));
      a.values.push_back(v);
    }
  });
  if (a.support.empty()) return a;
  double norm = 0.0;
  if (std::isinf(q)) {
    for (double v : a.values) norm = std::max(norm, std::abs(v));
  } else {
    for (std::size_t n = 0; n < a.support.size(); ++n) {
      std::size_t k = a.support[n];
      norm += std::pow(std::abs(a.values[n]), q) * g.weight(k / g.nt(), k % g.nt());
    }
    norm = std::pow(norm, 1.0 / q);
  }
  double gb = grid_gamma(g, b);
  double bound = std::isinf(q) ? 1.0 / gb : std::pow(gb, -(1.0 - 1.0 / q));
  for (double& v : a.values) v *= bound / norm;
  return a;
}

std::function<double(const Point&, double)> random_profile(Rng& rng, int kind) {
  if (kind == 0) return [](const Point&, double) { return 1.0; };
  if (kind == 1) {
    auto seed = rng();
    return [seed](const Point& y, double t) {
      // hash of the node coordinates keeps the profile a pure function
      auto h = std::hash<double>{}(y[0] * 1e3 + std::log(t)) ^ seed;
      Rng local(h);
      return uniform(local, -1.0, 1.0);
    };
  }
  double ph = uniform(rng, 0.0, 6.28);
  return [ph](const Point& y, double t) { return std::sin(3.0 * y[0] + 2.0 * std::log(t) + ph) + 0.3; };
}

SuiteResult atom_bound(const Ctx& c) {
  auto rng = c.rng(0);
  const double qs[] = {1.0, 2.0, 4.0, kInf};
  std::map<std::string, double> worst;
  std::size_t failures = 0, atoms = 0;
  double max_l1 = 0.0;
  while (atoms < 50) {
    double q = qs[atoms % 4];
    double alpha = pick(rng, {0.5, 1.0, 2.0}), beta = pick(rng, {0.5, 1.0, 2.0});
    Point ctr(uniform(rng, -5.0, 5.0));
    double r = uniform(rng, 0.15, 1.0) * beta * cutoff_m(ctr);
    auto a = profiled_atom(c.grid, Ball{ctr, r}, q, beta, alpha, beta, random_profile(rng, static_cast<int>(atoms % 3)));
    if (a.support.empty()) continue;
    auto rep = validate_atom(a);
    if (!rep.pass()) ++failures;
    std::string key = std::isinf(q) ? "inf" : std::to_string(static_cast<int>(q));
    worst[key] = std::max(worst[key], rep.area_l1);
    max_l1 = std::max(max_l1, rep.area_l1);
    ++atoms;
  }
  Json per_q;
  for (auto& [k, v] : worst) per_q[k] = number(v);
  Json m{{"atoms", atoms}, {"failures", failures}, {"max_area_l1", number(max_l1)}, {"max_area_l1_per_q", per_q},
         {"bound", 1.0 + kAreaSlack}};
  return {"atom_bound", failures == 0 && max_l1 <= 1.0 + kAreaSlack, m, 0.0};
}

using Family = std::vector<std::pair<std::string, std::function<GridFunction(GridPtr)>>>;

Family decomposition_family(Rng& rng) {
  Family fam;
  const std::pair<Ball, double> tents[] = {{{Point(0.0), 0.8}, 1.0},
                                           {{Point(1.5), 0.5}, 2.5},
                                           {{Point(-2.0), 0.4}, 0.7},
                                           {{Point(3.0), 0.3}, 4.0},
                                           {{Point(-0.7), 0.9}, 1.3}};
  for (std::size_t n = 0; n < 5; ++n) {
    auto [b, amp] = tents[n];
    fam.push_back({"tent_" + std::to_string(n), [b, amp](GridPtr g) { return tent_indicator(g, b, 1.0, 1.0, amp); }});
  }
  for (std::size_t n = 0; n < 5; ++n) {
    std::vector<BumpSpec> bumps;
    int count = 2 + static_cast<int>(n % 2);
    for (int k = 0; k < count; ++k)
      bumps.push_back({Point(uniform(rng, -3.0, 3.0)), std::exp(uniform(rng, -3.0, -0.5)), uniform(rng, 0.3, 0.8),
                       uniform(rng, 0.8, 1.5), uniform(rng, 0.5, 2.0)});
    fam.push_back({"bumps_" + std::to_string(n), [bumps](GridPtr g) { return bump_sum(g, bumps); }});
  }
  return fam;
}

SuiteResult atomic_decomposition(const Ctx& c) {
  auto rng = c.rng(1);
  auto fam = decomposition_family(rng);
  ConeSpec spec{1.0, 1.0};
  bool ok = true;
  std::vector<double> ratios;
  Json rows = Json::array();
  for (const auto& [name, make] : fam) {
    auto f = make(c.grid);
    auto d = decompose(f, 2.0, spec);
    double fmax = 0.0;
    for (double v : f.values()) fmax = std::max(fmax, std::abs(v));
    double err = reconstruction_error(d, f);
    std::size_t bad_atoms = 0;
    for (const auto& t : d.terms)
      if (!validate_atom(t.atom).pass()) ++bad_atoms;
    double residual = d.audit.total_mass > 0.0 ? d.audit.residual_mass / d.audit.total_mass : 0.0;
    double ratio = coefficient_report(d).ratio;
    double ratio_fine = coefficient_report(decompose(make(c.fine), 2.0, spec)).ratio;
    double dr = drift(ratio, ratio_fine);
    bool row_ok = err <= 1e-12 * fmax && residual < 1e-10 && bad_atoms == 0 && std::isfinite(ratio) && dr < 0.2 &&
                  d.audit.nesting_ok && d.audit.density_nesting_ok && d.audit.tent_inclusion_ok;
    ok = ok && row_ok;
    ratios.push_back(ratio);
    rows.push_back({{"name", name},
                    {"pass", row_ok},
                    {"atoms", d.terms.size()},
                    {"bad_atoms", bad_atoms},
                    {"reconstruction_error", number(err)},
                    {"residual_fraction", number(residual)},
                    {"ratio", number(ratio)},
                    {"ratio_refined", number(ratio_fine)},
                    {"refinement_drift", number(dr)},
                    {"audit", to_json(d.audit)}});
  }
  double sp = spread(ratios);
  Json m{{"functions", rows}, {"ratio_spread", number(sp)}, {"spread_limit", 3.0}};
  return {"atomic_decomposition", ok && sp < 3.0, m, 0.0};
}

SuiteResult tpp_identity(const Ctx& c) {
  auto rng = c.rng(2);
  const auto& g = *c.grid;
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    auto f = random_function(c.grid, rng, {uniform(rng, 1.0, 7.0), 1e-3, 8.0, uniform(rng, 0.05, 0.5), 2.0});
    ConeSpec spec{pick(rng, {0.5, 1.0, 2.0}), pick(rng, {0.5, 1.0, 2.0})};
    for (double p : {1.0, 2.0, 3.0}) {
      double tent = lp_gamma_norm(area_S(f, p, spec), p);
      double lp = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k)
        lp += std::pow(std::abs(f.at(k)), p) * g.weight(k / g.nt(), k % g.nt());
      lp = std::pow(lp, 1.0 / p);
      worst = std::max(worst, std::abs(tent - lp) / lp);
    }
  }
  Json m{{"functions", 20}, {"max_relative_discrepancy", number(worst)}, {"tolerance", 1e-9}};
  return {"tpp_identity", worst <= 1e-9, m, 0.0};
}

SuiteResult tent_geometry(const Ctx& c) {
  auto rng = c.rng(3);
  std::size_t off = 0, on = 0, classical_only = 0, balls = 0, samples = 0;
  bool pre = true;
  for (double beta : {1.0, 2.0})
    for (int n = 0; n < 10; ++n) {
      double sgn = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
      double cn = uniform(rng, std::sqrt(beta) + 0.6, 6.0);
      double rmax = std::min(beta / cn, cn - std::sqrt(beta));
      double r = n == 0 ? rmax : uniform(rng, 0.2, 1.0) * rmax;
      Ball b{Point(sgn * cn), r};
      std::vector<UpperPoint> pts;
      for (int s = 0; s < 10000; ++s) {
        double y = s % 20 == 0 ? b.center[0] : b.center[0] + uniform(rng, -1.2, 1.2) * r;
        double t = std::exp(uniform(rng, std::log(1e-3 * r), std::log(20.0 * r)));
        pts.push_back({Point(y), t});
      }
      auto rep = compare_tents(b, 1.0, beta, pts);
      pre = pre && rep.preconditions_ok;
      off += rep.off_axis_disagreements;
      on += rep.on_axis_disagreements;
      classical_only += rep.classical_only;
      samples += rep.samples;
      ++balls;
    }
  Json m{{"balls", balls},
         {"samples", samples},
         {"off_axis_disagreements", off},
         {"on_axis_disagreements", on},
         {"classical_only", classical_only},
         {"preconditions_ok", pre}};
  return {"tent_geometry", pre && off == 0 && classical_only == 0, m, 0.0};
}

SuiteResult comparison_lemma(const Ctx& c) {
  auto rng = c.rng(4);
  std::size_t violations = 0, pairs = 0;
  const double bs[] = {0.5, 1.0, 2.0};
  while (pairs < 100000) {
    double b = bs[pairs % 3];
    bool two = pairs % 5 == 4;
    Point y = two ? Point(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)) : Point(uniform(rng, -10.0, 10.0));
    double s = uniform(rng, -1.0, 1.0) * b * cutoff_m(y);
    double th = uniform(rng, 0.0, 6.283185307179586);
    Point x = two ? Point(y[0] + s * std::cos(th), y[1] + s * std::sin(th)) : Point(y[0] + s);
    if (!(distance(x, y) < b * cutoff_m(y))) continue;
    if (!comparison_lemma_check(x, y, b)) ++violations;
    ++pairs;
  }
  Json m{{"pairs", pairs}, {"violations", violations}};
  return {"comparison_lemma", violations == 0, m, 0.0};
}

SuiteResult ball_bracket(const Ctx& c) {
  auto rng = c.rng(5);
  std::size_t violations = 0;
  const double betas[] = {0.5, 1.0, 2.0};
  for (int n = 0; n < 1000; ++n) {
    double beta = betas[n % 3];
    bool two = n % 5 == 4;
    Point ctr = two ? Point(uniform(rng, -6.0, 6.0), uniform(rng, -6.0, 6.0)) : Point(uniform(rng, -8.0, 8.0));
    double r = (n % 50 == 0 ? 1.0 : uniform(rng, 1e-3, 1.0)) * beta * cutoff_m(ctr);
    if (!gamma_ball_bounds_check(Ball{ctr, r}, beta)) ++violations;
  }
  Json m{{"balls", 1000}, {"violations", violations}};
  return {"ball_bracket", violations == 0, m, 0.0};
}

struct DensityCase {
  std::string name;
  std::function<bool(const Point&)> in_a;
  std::function<GridFunction(GridPtr)> h;
};

std::vector<DensityCase> density_cases() {
  std::vector<DensityCase> cs;
  cs.push_back({"outside_unit", [](const Point& x) { return std::abs(x[0]) >= 1.0; },
                [](GridPtr g) { return tent_indicator(g, Ball{Point(3.5), 0.25}, 1.0, 1.0); }});
  cs.push_back({"half_line", [](const Point& x) { return x[0] <= 0.5; },
                [](GridPtr g) {
                  BumpSpec b{Point(-3.0), 0.1, 0.5, 1.2, 1.0};
                  return bump_sum(g, std::span<const BumpSpec>(&b, 1));
                }});
  cs.push_back({"two_intervals", [](const Point& x) { return std::abs(x[0]) >= 1.0 && std::abs(x[0]) <= 3.0; },
                [](GridPtr g) {
                  std::vector<BumpSpec> b{{Point(-1.5), 0.2, 0.8, 1.0, 1.0}, {Point(2.0), 0.5, 0.6, 1.0, 2.0}};
                  return bump_sum(g, b);
                }});
  cs.push_back({"punctured", [](const Point& x) { return std::abs(x[0] - 2.0) >= 0.3; },
                [](GridPtr g) {
                  BumpSpec b{Point(3.3), 0.2, 0.5, 1.0, 2.0};
                  return bump_sum(g, std::span<const BumpSpec>(&b, 1));
                }});
  cs.push_back({"gaps", [](const Point& x) {
                  for (double z : {-3.0, -1.5, 0.0, 1.5, 3.0})
                    if (std::abs(x[0] - z) < 0.2) return false;
                  return true;
                },
                [](GridPtr g) {
                  std::vector<BumpSpec> b{{Point(3.8), 0.15, 0.5, 1.5, 1.0}, {Point(-4.2), 0.3, 0.6, 1.0, 0.5}};
                  return bump_sum(g, b);
                }});
  return cs;
}

SuiteResult density_inequality(const Ctx& c) {
  ConeSpec spec{1.0, 1.0};
  const double eta = 0.5, eta_rf = 0.9, delta = 0.5;
  bool ok = true;
  Json rows = Json::array();
  for (const auto& cs : density_cases()) {
    std::vector<DensityReport> lem, rev;
    for (const auto& grid : {c.grid, c.fine}) {
      auto A = RegionMask::spatial_from(grid, cs.in_a);
      auto H = cs.h(grid);
      double eta_bar = eta_bar_midpoint(doubling_constant(*grid, spec.beta * (1.0 + spec.beta), eta));
      lem.push_back(density_inequality_check(A, H, eta, eta_bar, spec));
      rev.push_back(reverse_fubini_check(A, H, eta_rf, spec.alpha, spec.beta, delta));
    }
    double d1 = drift(lem[0].ratio, lem[1].ratio), d2 = drift(rev[0].ratio, rev[1].ratio);
    bool row_ok = lem[0].finite && lem[1].finite && rev[0].finite && rev[1].finite && lem[0].lhs > 0.0 &&
                  rev[0].lhs > 0.0 && d1 < 0.2 && d2 < 0.2;
    ok = ok && row_ok;
    rows.push_back({{"name", cs.name},
                    {"pass", row_ok},
                    {"density", to_json(lem[0])},
                    {"density_refined_ratio", number(lem[1].ratio)},
                    {"density_drift", number(d1)},
                    {"within_lemma_constant", lem[0].lambda_bound > 0.0 && lem[0].ratio <= 1.0 / lem[0].lambda_bound},
                    {"reverse_fubini", to_json(rev[0])},
                    {"reverse_fubini_refined_ratio", number(rev[1].ratio)},
                    {"reverse_fubini_drift", number(d2)}});
  }
  return {"density_inequality", ok, Json{{"cases", rows}}, 0.0};
}

SuiteResult duality(const Ctx& c) {
  auto rng = c.rng(7);
  ConeSpec spec{1.0, 1.0};
  // Hoelder chain on random pairs
  std::size_t pq_fail = 0, pq_checks = 0;
  double worst_fubini = 0.0;
  const std::pair<double, double> pqs[] = {{2.0, 2.0}, {3.0, 2.0}, {2.0, 3.0}};
  for (auto [p, q] : pqs)
    for (int n = 0; n < 100; ++n) {
      RandomSpec rs{uniform(rng, 0.5, 3.0), 1e-3, 8.0, uniform(rng, 0.05, 0.3), 1.0};
      auto f = random_function(c.grid, rng, rs);
      auto g = random_function(c.grid, rng, rs);
      auto r = check_duality_pq(f, g, p, q, spec);
      if (!r.pass()) ++pq_fail;
      if (r.lhs > 0.0) worst_fubini = std::max(worst_fubini, std::abs(r.fubini - r.lhs) / r.lhs);
      ++pq_checks;
    }
  // S_q f against C_{q'} g on a tent family
  auto dict = BallDictionary::graded(*c.grid, spec.beta);
  std::vector<double> c1q;
  bool c1q_finite = true;
  for (int n = 0; n < 5; ++n) {
    Point ctr(uniform(rng, -3.0, 3.0));
    Ball b{ctr, uniform(rng, 0.3, 1.0) * cutoff_m(ctr)};
    auto f = tent_indicator(c.grid, b, 1.0, 1.0);
    auto r = check_duality_1q(f, f, 2.0, spec, dict);
    c1q_finite = c1q_finite && r.finite && r.constant > 0.0;
    c1q.push_back(r.constant);
  }
  // Carleson measures against T^{1,inf}
  auto dict2 = BallDictionary::graded(*c.grid, spec.beta, 2);
  const double delta = 2.0 * spec.beta;
  std::vector<double> cm, cm2;
  bool cm_finite = true;
  for (int n = 0; n < 5; ++n) {
    Point ctr(uniform(rng, -3.0, 3.0));
    Ball b{ctr, uniform(rng, 0.4, 1.0) * cutoff_m(ctr)};
    BumpSpec bs{ctr, 0.5 * b.radius, 0.8 * b.radius, 1.5, uniform(rng, 0.5, 2.0)};
    auto f = bump_sum(c.grid, std::span<const BumpSpec>(&bs, 1));
    DiscreteMeasure mu;
    while (mu.points.size() < 20) {
      UpperPoint p{Point(ctr[0] + uniform(rng, -1.0, 1.0) * b.radius), std::exp(uniform(rng, std::log(1e-3), std::log(b.radius)))};
      if (ball_tent_contains(b, spec.alpha, spec.beta, p)) mu.points.push_back({p, uniform(rng, 0.1, 1.0)});
    }
    auto r = check_carleson_pairing(mu, f, spec.alpha, spec.beta, delta, dict);
    auto r2 = check_carleson_pairing(mu, f, spec.alpha, spec.beta, delta, dict2);
    cm_finite = cm_finite && r.finite && r2.finite;
    cm.push_back(r.constant);
    cm2.push_back(r2.constant);
  }
  double dict_stability = 1.0;
  for (std::size_t n = 0; n < cm.size(); ++n)
    if (cm[n] > 0.0 && cm2[n] > 0.0) dict_stability = std::max(dict_stability, std::max(cm[n] / cm2[n], cm2[n] / cm[n]));
  double s1q = spread(c1q);
  bool ok = pq_fail == 0 && c1q_finite && s1q < 2.0 && cm_finite && dict_stability < 2.0;
  Json m{{"pq_checks", pq_checks},
         {"pq_failures", pq_fail},
         {"worst_fubini_relative", number(worst_fubini)},
         {"one_q_constants", array_of(c1q)},
         {"one_q_spread", number(s1q)},
         {"carleson_constants", array_of(cm)},
         {"carleson_constants_dense_dictionary", array_of(cm2)},
         {"carleson_dictionary_stability", number(dict_stability)},
         {"stability_limit", 2.0}};
  return {"duality", ok, m, 0.0};
}

SuiteResult stopping_time_suite(const Ctx& c) {
  auto rng = c.rng(8);
  ConeSpec spec{1.0, 1.0};
  auto dict = BallDictionary::graded(*c.grid, spec.beta);
  Json rows = Json::array();
  bool ok = true;
  for (int n = 0; n < 5; ++n) {
    GridFunction g = n < 3 ? tent_indicator(c.grid, Ball{Point(uniform(rng, -3.0, 3.0)), uniform(rng, 0.3, 0.9)}, 1.0,
                                            1.0, uniform(rng, 0.5, 2.0))
                           : random_function(c.grid, rng, {2.0, 1e-3, 2.0, 0.2, 1.0});
    auto r = stopping_density(g, 2.0, spec, dict);
    ok = ok && r.lambda_M > 0.0;
    rows.push_back(to_json(r));
  }
  return {"stopping_time", ok, Json{{"functions", rows}}, 0.0};
}

Family independence_family(Rng& rng) {
  Family fam;
  fam.push_back({"tent_a", [](GridPtr g) { return tent_indicator(g, Ball{Point(0.3), 0.9}, 1.0, 1.0); }});
  fam.push_back({"tent_b", [](GridPtr g) { return tent_indicator(g, Ball{Point(-2.5), 0.35}, 0.5, 2.0, 3.0); }});
  for (int n = 0; n < 2; ++n) {
    std::vector<BumpSpec> bumps;
    for (int k = 0; k < 3; ++k)
      bumps.push_back({Point(uniform(rng, -3.0, 3.0)), std::exp(uniform(rng, -3.0, 0.0)), uniform(rng, 0.3, 1.0),
                       uniform(rng, 0.8, 1.5), uniform(rng, 0.5, 2.0)});
    fam.push_back({"bumps_" + std::to_string(n), [bumps](GridPtr g) { return bump_sum(g, bumps); }});
  }
  std::vector<BumpSpec> wide{{Point(0.0), 1.0, 3.0, 2.5, 1.0}};
  fam.push_back({"wide_bump", [wide](GridPtr g) { return bump_sum(g, wide); }});
  return fam;
}

SuiteResult independence(const Ctx& c) {
  auto rng = c.rng(9);
  const double ab[] = {0.5, 1.0, 2.0};
  bool ok = true;
  Json rows = Json::array();
  for (const auto& [name, make] : independence_family(rng)) {
    auto s = independence_sweep(make(c.grid), {1.0, 2.0}, ab, ab);
    auto s2 = independence_sweep(make(c.fine), {1.0, 2.0}, ab, ab);
    bool finite = std::all_of(s.norms.begin(), s.norms.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
    double dr = drift(s.max_min, s2.max_min);
    bool row_ok = finite && std::isfinite(s.max_min) && s.max_min < 100.0 && dr < 0.2;
    ok = ok && row_ok;
    rows.push_back({{"name", name},
                    {"pass", row_ok},
                    {"norms", array_of(s.norms)},
                    {"max_min", number(s.max_min)},
                    {"max_min_refined", number(s2.max_min)},
                    {"refinement_drift", number(dr)}});
  }
  return {"independence", ok, Json{{"functions", rows}}, 0.0};
}

// about six cells of the desk grid; fixed so refinement keeps the same family
constexpr double kMinAtomRadius = 0.2;

SuiteResult embedding(const Ctx& c) {
  auto rng = c.rng(10);
  const auto& g = *c.grid;
  auto phi = default_phi();
  EmbedOptions opts{c.mutation == "d_truncation"};
  std::vector<Atom> atoms;
  while (atoms.size() < 19) {
    Point ctr(uniform(rng, -4.0, 4.0));
    Ball b{ctr, uniform(rng, 0.3, 1.0) * cutoff_m(ctr)};
    // phi_t on balls narrower than a few cells is not resolved by the grid
    if (b.radius < kMinAtomRadius) continue;
    auto a = atoms.size() % 2 == 0 ? tent_indicator_atom(c.grid, b, 2.0, 1.0, 1.0)
                                   : profiled_atom(c.grid, b, 2.0, 1.0, 1.0, 1.0, random_profile(rng, 2));
    if (!a.support.empty()) atoms.push_back(std::move(a));
  }
  // node-centred ball on the admissibility boundary: its tent holds every t at the centre
  Point sc = g.node(g.nearest_node(Point(0.7)));
  atoms.push_back(tent_indicator_atom(c.grid, Ball{sc, cutoff_m(sc)}, 2.0, 1.0, 1.0));

  std::size_t support_fail = 0, mean_fail = 0, invalid = 0;
  std::vector<double> consts;
  Json balls = Json::array();
  double worst_mean = 0.0;
  for (const auto& a : atoms) {
    balls.push_back(to_json(a.ball));
    if (!validate_atom(a).pass()) ++invalid;
    auto r = check_h1_atom(a, phi, opts);
    if (!r.support_ok) ++support_fail;
    if (!r.mean_ok) ++mean_fail;
    if (r.l1 > 0.0) worst_mean = std::max(worst_mean, std::abs(r.mean) / r.l1);
    consts.push_back(r.l2_constant);
  }
  bool sentinel_detected = !check_h1_atom(atoms.back(), phi, EmbedOptions{true}).support_ok;
  double sp = spread(consts);
  bool ok = invalid == 0 && support_fail == 0 && mean_fail == 0 && sp < 2.0 && sentinel_detected;
  Json m{{"atoms", atoms.size()},
         {"invalid_atoms", invalid},
         {"support_failures", support_fail},
         {"mean_failures", mean_fail},
         {"worst_relative_mean", number(worst_mean)},
         {"balls", balls},
         {"l2_constants", array_of(consts)},
         {"l2_constant_spread", number(sp)},
         {"stability_limit", 2.0},
         {"sentinel_detected", sentinel_detected},
         {"mutation", c.mutation}};
  return {"embedding", ok, m, 0.0};
}

using SuiteFn = SuiteResult (*)(const Ctx&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"atom_bound", atom_bound},
      {"atomic_decomposition", atomic_decomposition},
      {"tpp_identity", tpp_identity},
      {"tent_geometry", tent_geometry},
      {"comparison_lemma", comparison_lemma},
      {"ball_bracket", ball_bracket},
      {"density_inequality", density_inequality},
      {"duality", duality},
      {"stopping_time", stopping_time_suite},
      {"independence", independence},
      {"embedding", embedding},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<SuiteResult> run_battery(const BatteryOptions& opts) {
  require(opts.mutation.empty() || opts.mutation == "d_truncation", "unknown mutation '" + opts.mutation + "'");
  std::vector<std::string> selected = opts.suites.value_or(suite_names());
  require(!selected.empty(), "empty battery selection");
  for (const auto& s : selected)
    require(std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end(),
            "unknown suite '" + s + "'");
  Ctx ctx;
  ctx.grid = opts.grid ? opts.grid : HalfSpaceGrid::desk_default();
  ctx.fine = ctx.grid->refined();
  ctx.seed = opts.seed;
  ctx.mutation = opts.mutation;
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : registry()) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    auto r = fn(ctx);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (name == "atom_bound" && r.seconds > 60.0) r.pass = false;
    out.push_back(std::move(r));
  }
  return out;
}

Json battery_report(const BatteryOptions& opts, const std::vector<SuiteResult>& results) {
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : results) {
    suites.push_back({{"name", r.name}, {"pass", r.pass}, {"metrics", r.metrics}});
    all = all && r.pass;
  }
  auto grid = opts.grid ? opts.grid : HalfSpaceGrid::desk_default();
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return Json{{"seed", opts.seed},         {"grid", to_json(*grid)}, {"mutation", opts.mutation},
              {"pass", all},               {"suites", suites},       {"timestamp", stamp}};
}

Json comparable(Json report) {
  report.erase("timestamp");
  return report;
}

}  // namespace gtent
