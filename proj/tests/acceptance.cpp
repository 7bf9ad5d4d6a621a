// Runs the verification battery at desk scale and checks each acceptance
// criterion against thresholds pinned here, independent of the suite verdicts.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "gtent/battery.hpp"
#include "gtent/parallel.hpp"

using namespace gtent;

namespace {

constexpr double kAtomL1 = 1.05;
constexpr double kAtomSeconds = 60.0;
constexpr double kReconstruction = 1e-12;
constexpr double kResidual = 1e-10;
constexpr double kFamilySpread = 3.0;
constexpr double kRefinementDrift = 0.2;
constexpr double kTppRelative = 1e-9;
constexpr double kStability = 2.0;
constexpr double kSweepMaxMin = 100.0;
constexpr double kMeanRelative = 1e-8;
constexpr std::uint64_t kSeed = 42;

double num(const Json& j) {
  if (j.is_number()) return j.get<double>();
  auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

struct Check {
  std::string detail;
  bool ok = true;
  void need(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const SuiteResult& suite(const std::vector<SuiteResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("suite missing: " + name);
}

Check atom_bound(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "atom_bound");
  Check c;
  c.need(s.metrics["atoms"] == 50, "atom count");
  c.need(s.metrics["failures"] == 0, "validate_atom failures");
  for (const char* q : {"1", "2", "4", "inf"}) c.need(s.metrics["max_area_l1_per_q"].contains(q), "q coverage");
  double l1 = num(s.metrics["max_area_l1"]);
  c.need(l1 <= kAtomL1, "max area L1 " + std::to_string(l1));
  c.need(s.seconds <= kAtomSeconds, "runtime " + std::to_string(s.seconds) + " s");
  return c;
}

Check atomic_decomposition(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "atomic_decomposition");
  Check c;
  c.need(s.metrics["functions"].size() == 10, "family size");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& f : s.metrics["functions"]) {
    std::string n = f["name"].get<std::string>();
    c.need(num(f["reconstruction_error"]) <= kReconstruction, n + " reconstruction");
    c.need(num(f["residual_fraction"]) < kResidual, n + " residual");
    c.need(f["bad_atoms"] == 0, n + " invalid atoms");
    double ratio = num(f["ratio"]);
    c.need(finite_positive(ratio), n + " ratio not finite");
    c.need(num(f["refinement_drift"]) < kRefinementDrift, n + " refinement drift");
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  c.need(hi / lo < kFamilySpread, "ratio spread " + std::to_string(hi / lo));
  return c;
}

Check tpp_identity(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "tpp_identity");
  Check c;
  c.need(s.metrics["functions"] == 20, "function count");
  double d = num(s.metrics["max_relative_discrepancy"]);
  c.need(d <= kTppRelative, "discrepancy " + std::to_string(d));
  return c;
}

Check tent_geometry(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "tent_geometry");
  Check c;
  c.need(s.metrics["preconditions_ok"] == true, "ball preconditions");
  c.need(s.metrics["samples"].get<std::size_t>() >= 10 * 10000, "sample count");
  c.need(s.metrics["off_axis_disagreements"] == 0, "off-axis disagreements");
  return c;
}

Check zero_violations(const std::vector<SuiteResult>& rs, const std::string& name, const char* count,
                      std::size_t expected) {
  const auto& s = suite(rs, name);
  Check c;
  c.need(s.metrics[count].get<std::size_t>() == expected, "sample count");
  c.need(s.metrics["violations"] == 0, std::to_string(s.metrics["violations"].get<std::size_t>()) + " violations");
  return c;
}

Check density(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "density_inequality");
  Check c;
  c.need(s.metrics["cases"].size() == 5, "case count");
  for (const auto& k : s.metrics["cases"]) {
    std::string n = k["name"].get<std::string>();
    c.need(k["density"]["finite"] == true && std::isfinite(num(k["density_refined_ratio"])), n + " density ratio");
    c.need(k["reverse_fubini"]["finite"] == true && std::isfinite(num(k["reverse_fubini_refined_ratio"])),
           n + " reverse-Fubini ratio");
    c.need(num(k["density_drift"]) < kRefinementDrift, n + " density drift");
    c.need(num(k["reverse_fubini_drift"]) < kRefinementDrift, n + " reverse-Fubini drift");
  }
  return c;
}

double spread_of(const Json& a) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& v : a) {
    lo = std::min(lo, num(v));
    hi = std::max(hi, num(v));
  }
  return hi / lo;
}

Check duality(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "duality");
  Check c;
  c.need(s.metrics["pq_checks"] == 300, "pair count");
  c.need(s.metrics["pq_failures"] == 0, "Hoelder chain failures");
  for (const auto& v : s.metrics["one_q_constants"]) c.need(finite_positive(num(v)), "1q constant not finite");
  c.need(spread_of(s.metrics["one_q_constants"]) < kStability, "1q family spread");
  const auto& a = s.metrics["carleson_constants"];
  const auto& b = s.metrics["carleson_constants_dense_dictionary"];
  for (std::size_t n = 0; n < a.size(); ++n) {
    double x = num(a[n]), y = num(b[n]);
    c.need(std::isfinite(x) && std::isfinite(y), "Carleson constant not finite");
    if (x > 0.0 && y > 0.0) c.need(std::max(x / y, y / x) < kStability, "Carleson dictionary stability");
  }
  return c;
}

Check stopping_time(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "stopping_time");
  Check c;
  c.need(s.metrics["functions"].size() == 5, "function count");
  for (const auto& f : s.metrics["functions"]) {
    double M = num(f["M"]), K = num(f["K_beta"]);
    c.need(std::abs(M - 2.0 * std::sqrt(K)) <= 1e-12 * M, "M does not follow the design rule");
    c.need(num(f["lambda_M"]) > 0.0, "lambda_M not positive");
  }
  return c;
}

Check independence(const std::vector<SuiteResult>& rs) {
  const auto& s = suite(rs, "independence");
  Check c;
  c.need(s.metrics["functions"].size() == 5, "function count");
  for (const auto& f : s.metrics["functions"]) {
    std::string n = f["name"].get<std::string>();
    c.need(f["norms"].size() == 9, n + " sweep size");
    for (const auto& v : f["norms"]) c.need(finite_positive(num(v)), n + " norm not finite");
    c.need(num(f["max_min"]) < kSweepMaxMin, n + " max/min");
    c.need(num(f["refinement_drift"]) < kRefinementDrift, n + " refinement drift");
  }
  return c;
}

Check embedding(const std::vector<SuiteResult>& rs, const SuiteResult& mutated) {
  const auto& s = suite(rs, "embedding");
  Check c;
  c.need(s.metrics["atoms"] == 20, "atom count");
  c.need(s.metrics["invalid_atoms"] == 0, "invalid atoms");
  c.need(s.metrics["support_failures"] == 0, "support failures");
  c.need(num(s.metrics["worst_relative_mean"]) <= kMeanRelative, "gamma average");
  double sp = spread_of(s.metrics["l2_constants"]);
  c.need(sp < kStability, "L2 constant spread " + std::to_string(sp));
  c.need(mutated.metrics["support_failures"].get<std::size_t>() > 0 && !mutated.pass, "mutation not detected");
  return c;
}

}  // namespace

int main() {
  try {
    BatteryOptions opts;
    opts.seed = kSeed;
    auto t0 = std::chrono::steady_clock::now();
    auto first = run_battery(opts);
    auto report = battery_report(opts, first);

    BatteryOptions mut = opts;
    mut.suites = std::vector<std::string>{"embedding"};
    mut.mutation = "d_truncation";
    auto mutated = run_battery(mut).front();

    set_thread_count(1);
    auto second = run_battery(opts);
    set_thread_count(0);
    bool same = comparable(report) == comparable(battery_report(opts, second));

    std::vector<std::pair<std::string, Check>> rows{
        {"atom bound", atom_bound(first)},
        {"atomic decomposition", atomic_decomposition(first)},
        {"T^{p,p} = L^p identity", tpp_identity(first)},
        {"tent geometry", tent_geometry(first)},
        {"comparison lemma", zero_violations(first, "comparison_lemma", "pairs", 100000)},
        {"ball measure bracket", zero_violations(first, "ball_bracket", "balls", 1000)},
        {"density and reverse Fubini", density(first)},
        {"duality inequalities", duality(first)},
        {"stopping-time density", stopping_time(first)},
        {"independence sweep", independence(first)},
        {"pi_phi atom checks", embedding(first, mutated)},
    };
    Check det;
    det.need(same, "reports differ between thread counts");
    rows.push_back({"determinism", det});

    int failed = 0;
    for (std::size_t n = 0; n < rows.size(); ++n) {
      const auto& [name, c] = rows[n];
      std::printf("%-4s %2zu %-28s %s\n", c.ok ? "PASS" : "FAIL", n + 1, name.c_str(), c.detail.c_str());
      if (!c.ok) ++failed;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%zu/%zu criteria pass (%.1f s)\n", rows.size() - failed, rows.size(), secs);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
}
