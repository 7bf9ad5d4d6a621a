#include "gtent/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gtent/io.hpp"

namespace gtent {

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

double as_double(const Json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
    throw FormatError("expected a number, got \"" + s + "\"");
  }
  return j.get<double>();
}

Point point_from_json(const Json& j) {
  std::vector<double> c;
  for (const auto& v : j) c.push_back(v.get<double>());
  return Point::from(c);
}

}  // namespace

Json to_json(const Point& p) {
  Json j = Json::array();
  for (double c : p.coords()) j.push_back(c);
  return j;
}

Json to_json(const Ball& b) { return Json{{"center", to_json(b.center)}, {"radius", number(b.radius)}}; }

Json to_json(const HalfSpaceGrid& g) {
  Json axes = Json::array();
  for (int a = 0; a < g.dim(); ++a) axes.push_back({{"lo", g.axis(a).lo}, {"hi", g.axis(a).hi}, {"count", g.axis(a).count}});
  return Json{{"axes", axes}, {"t_min", g.t_min()}, {"t_max", g.t_max()}, {"nt", g.nt()}};
}

GridPtr grid_from_json(const Json& j) {
  std::vector<Axis> axes;
  for (const auto& a : j.at("axes"))
    axes.push_back({a.at("lo").get<double>(), a.at("hi").get<double>(), a.at("count").get<std::size_t>()});
  return HalfSpaceGrid::make(std::move(axes), j.at("t_min").get<double>(), j.at("t_max").get<double>(),
                             j.at("nt").get<std::size_t>());
}

Json to_json(const AtomReport& r) {
  return Json{{"pass", r.pass()},
              {"support_ok", r.support_ok},
              {"support_violations", r.support_violations},
              {"norm_ok", r.norm_ok},
              {"norm_value", number(r.norm_value)},
              {"norm_bound", number(r.norm_bound)},
              {"area_ok", r.area_ok},
              {"area_l1", number(r.area_l1)},
              {"admissible_ok", r.admissible_ok}};
}

Json to_json(const DecompositionAudit& a) {
  return Json{{"nesting_ok", a.nesting_ok},
              {"density_nesting_ok", a.density_nesting_ok},
              {"tent_inclusion_ok", a.tent_inclusion_ok},
              {"tent_violations", a.tent_violations},
              {"cube_bracket_ok", a.cube_bracket_ok},
              {"partition_ok", a.partition_ok},
              {"partition_error", number(a.partition_error)},
              {"sup_bound_ok", a.sup_bound_ok},
              {"mu_constant", number(a.mu_constant)},
              {"residual_mass", number(a.residual_mass)},
              {"total_mass", number(a.total_mass)},
              {"effective_delta", number(a.effective_delta)},
              {"eta", a.eta},
              {"eta_bar", a.eta_bar},
              {"doubling", number(a.doubling)},
              {"inflation", a.inflation},
              {"k_range", {a.k_lo, a.k_hi}}};
}

Json to_json(const CoefficientReport& r) {
  return Json{{"sum_abs_lambda", number(r.sum_abs_lambda)},
              {"source_norm", number(r.source_norm)},
              {"ratio", number(r.ratio)},
              {"terms", r.terms}};
}

Json to_json(const DensityReport& r) {
  return Json{{"lhs", number(r.lhs)},         {"rhs", number(r.rhs)},
              {"ratio", number(r.ratio)},     {"vacuous", r.vacuous},
              {"finite", r.finite},           {"eta", r.eta},
              {"eta_bar", r.eta_bar},         {"doubling", number(r.doubling)},
              {"lambda_bound", number(r.lambda_bound)}, {"density_nodes", r.density_nodes}};
}

Json to_json(const CarlesonReport& r, bool per_ball) {
  Json j{{"norm", number(r.norm)}, {"witness", to_json(r.witness)}};
  if (per_ball) {
    Json t = Json::array();
    for (double v : r.per_ball) t.push_back(number(v));
    j["per_ball"] = t;
  }
  return j;
}

Json to_json(const CarlesonPairingReport& r) {
  return Json{{"lhs", number(r.lhs)},
              {"carleson", number(r.carleson)},
              {"tent", number(r.tent)},
              {"constant", number(r.constant)},
              {"finite", r.finite}};
}

Json to_json(const StoppingReport& r) {
  return Json{{"M", number(r.M)},
              {"K_beta", number(r.K_beta)},
              {"lambda_M", number(r.lambda_M)},
              {"lambda_theory", number(r.lambda_theory)},
              {"worst_ball", to_json(r.worst)}};
}

Json to_json(const DualityOneQReport& r) {
  return Json{{"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"constant", number(r.constant)},
              {"finite", r.finite},
              {"stopping", to_json(r.stopping)}};
}

Json to_json(const DualityPqReport& r) {
  return Json{{"pass", r.pass()},          {"lhs", number(r.lhs)},       {"fubini", number(r.fubini)},
              {"middle", number(r.middle)}, {"rhs", number(r.rhs)},      {"fubini_ok", r.fubini_ok},
              {"area_ok", r.area_ok},      {"holder_ok", r.holder_ok}};
}

Json to_json(const H1AtomReport& r) {
  return Json{{"pass", r.pass()},
              {"support_ok", r.support_ok},
              {"support_violations", r.support_violations},
              {"support_radius", number(r.support_radius)},
              {"mean", number(r.mean)},
              {"l1", number(r.l1)},
              {"mean_ok", r.mean_ok},
              {"l2", number(r.l2)},
              {"l2_constant", number(r.l2_constant)},
              {"vacuous", r.vacuous}};
}

Json to_json(const CubeAudit& a) {
  return Json{{"bracket_ok", a.bracket_ok},
              {"disjoint_ok", a.disjoint_ok},
              {"uncovered", a.uncovered},
              {"outside_target", a.outside_target},
              {"tolerance", a.tolerance}};
}

Json to_json(const BallAudit& a) {
  return Json{{"covers", a.covers},
              {"inside", a.inside},
              {"meets_complement", a.meets_complement},
              {"shrunken_disjoint", a.shrunken_disjoint},
              {"max_overlap", a.max_overlap}};
}

Json to_json(const IndependenceSweep& s) {
  Json params = Json::array(), norms = Json::array(), ratios = Json::array();
  for (const auto& p : s.params) params.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
  for (double n : s.norms) norms.push_back(number(n));
  for (const auto& row : s.ratios) {
    Json r = Json::array();
    for (double v : row) r.push_back(number(v));
    ratios.push_back(r);
  }
  return Json{{"params", params}, {"norms", norms}, {"ratios", ratios}, {"max_min", number(s.max_min)}};
}

void export_decomposition(const Decomposition& d, const std::filesystem::path& dir) {
  require(d.grid != nullptr, "decomposition has no grid");
  std::filesystem::create_directories(dir);
  Json terms = Json::array();
  for (std::size_t n = 0; n < d.terms.size(); ++n) {
    const auto& t = d.terms[n];
    char name[32];
    std::snprintf(name, sizeof name, "atom_%05zu.gtnt", n);
    io::write_binary(t.atom.dense(), dir / name);
    terms.push_back({{"lambda", number(t.lambda)},
                     {"ball", to_json(t.atom.ball)},
                     {"delta", number(t.atom.delta)},
                     {"level", t.level},
                     {"atom_file", name}});
  }
  Json levels = Json::array();
  for (const auto& l : d.levels)
    levels.push_back({{"k", l.k}, {"o_mass", number(l.o_mass)}, {"cubes", l.cubes}, {"pieces", l.pieces}});
  Json j{{"grid", to_json(*d.grid)},
         {"q", number(d.q)},
         {"alpha", d.spec.alpha},
         {"beta", d.spec.beta},
         {"source_norm", number(d.source_norm)},
         {"terms", terms},
         {"levels", levels},
         {"audit", to_json(d.audit)}};
  std::ofstream out(dir / "decomposition.json");
  if (!out) throw FormatError("cannot write " + (dir / "decomposition.json").string());
  out << j.dump(2) << '\n';
}

Decomposition import_decomposition(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw FormatError("cannot read " + json_path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad decomposition JSON: ") + e.what());
  }
  try {
    Decomposition d;
    d.grid = grid_from_json(j.at("grid"));
    d.q = as_double(j.at("q"));
    d.spec = ConeSpec{j.at("alpha").get<double>(), j.at("beta").get<double>()};
    d.source_norm = as_double(j.at("source_norm"));
    auto dir = json_path.parent_path();
    for (const auto& t : j.at("terms")) {
      auto dense = io::read_binary(dir / t.at("atom_file").get<std::string>());
      require_same_grid(dense.grid(), *d.grid);
      const auto& b = t.at("ball");
      Ball ball{point_from_json(b.at("center")), as_double(b.at("radius"))};
      auto atom = Atom::from_dense(dense, ball, d.q, as_double(t.at("delta")), d.spec.alpha, d.spec.beta);
      atom.grid = d.grid;
      d.terms.push_back({as_double(t.at("lambda")), std::move(atom), t.at("level").get<int>(), 0});
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad decomposition JSON: ") + e.what());
  }
}

}  // namespace gtent
