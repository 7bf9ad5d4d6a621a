#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "gtent/error.hpp"
#include "gtent/parallel.hpp"

using namespace gtent;
using namespace gtent::cli;

namespace {

struct Flags {
  std::string config, out, seed, threads, grid, p, q, alpha, beta, delta, eta, suites, mutation;
};

// Defaults, then the config file, then whichever flags were given.
RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) apply_file(cfg, f.config);
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--out")) apply_value(cfg, "run.out", f.out);
  if (given("--seed")) apply_value(cfg, "run.seed", f.seed);
  if (given("--threads")) apply_value(cfg, "run.threads", f.threads);
  if (given("--grid")) {
    auto parts = split(f.grid, ',');
    if (parts.size() != 2) throw FormatError("--grid expects nx,nt");
    apply_value(cfg, "grid.nx", parts[0]);
    apply_value(cfg, "grid.nt", parts[1]);
  }
  if (given("--p")) apply_value(cfg, "params.p", f.p);
  if (given("--q")) apply_value(cfg, "params.q", f.q);
  if (given("--alpha")) apply_value(cfg, "params.alpha", f.alpha);
  if (given("--beta")) apply_value(cfg, "params.beta", f.beta);
  if (given("--delta")) apply_value(cfg, "params.delta", f.delta);
  if (given("--eta")) apply_value(cfg, "params.eta", f.eta);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian tent spaces: norms, atomic decompositions, duality and embedding checks"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "INI file with sections grid, params, dictionary, run")
      ->check(CLI::ExistingFile);
  app.add_option("--out", f.out, "directory for reports and output files");
  app.add_option("--seed", f.seed, "seed for randomized suites (default 42)");
  app.add_option("--threads", f.threads, "worker cap; 0 uses the runtime default");
  app.add_option("--grid", f.grid, "grid size as nx,nt");
  app.add_option("--p", f.p, "outer exponent(s), comma separated, inf allowed");
  app.add_option("--q", f.q, "inner exponent(s), comma separated, inf allowed");
  app.add_option("--alpha", f.alpha, "aperture(s), comma separated");
  app.add_option("--beta", f.beta, "admissibility level(s), comma separated");
  app.add_option("--delta", f.delta, "atom / Carleson admissibility level");
  app.add_option("--eta", f.eta, "density threshold for the decomposition");

  CommandArgs args;
  std::string ball, shape;

  auto* norm = app.add_subcommand("norm", "tent-space norms of function files for every (p, q, alpha, beta)");
  norm->add_option("inputs", args.inputs, "function files (.gtnt or .csv)")->required();

  auto* dec = app.add_subcommand("decompose", "atomic decomposition; writes decomposition.json and atoms to --out");
  dec->add_option("input", args.inputs, "function file")->required()->expected(1);

  auto* ver = app.add_subcommand("verify", "run the property battery; nonzero exit if any suite fails");
  ver->add_option("--suites", f.suites, "comma separated suite names");
  ver->add_option("--mutation", f.mutation, "deliberate bug to inject (d_truncation)");

  auto* ind = app.add_subcommand("independence", "norm ratios across the (alpha, beta) sweep");
  ind->add_option("inputs", args.inputs, "function files")->required();

  auto* car = app.add_subcommand("carleson", "Carleson norm of a measure, optionally paired with a function");
  car->add_option("measure", args.measure, "measure CSV (y, t, weight)")->required();
  car->add_option("--function", args.function, "function file for the pairing check");

  auto* emb = app.add_subcommand("embed", "pi_phi of a function; with --ball, the H1 atom checks");
  emb->add_option("input", args.inputs, "function file")->required()->expected(1);
  emb->add_option("--ball", ball, "center,radius of the atom's ball");
  emb->add_flag("--drop-truncation", args.drop_truncation, "omit the local region (for mutation testing)");

  auto* gen = app.add_subcommand("generate", "write a sample function on the configured grid");
  gen->add_option("kind", args.kind, "tent, bump or random")->required();
  gen->add_option("output", args.inputs, "output file (.gtnt or .csv)")->required()->expected(1);
  gen->add_option("--shape", shape, "kind-specific numbers, comma separated");

  for (auto* sub : {norm, dec, ver, ind, car, emb, gen}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    auto cfg = resolve(app, f);
    if (ver->count("--suites")) apply_value(cfg, "run.suites", f.suites);
    if (ver->count("--mutation")) apply_value(cfg, "run.mutation", f.mutation);
    if (!ball.empty()) {
      auto v = parse_list(ball);
      if (v.size() != 2) throw FormatError("--ball expects center,radius");
      args.ball = Ball{Point(v[0]), v[1]};
    }
    if (!shape.empty()) args.shape = parse_list(shape);
    set_thread_count(cfg.threads);

    if (*norm) return cmd_norm(cfg, args);
    if (*dec) return cmd_decompose(cfg, args);
    if (*ver) return cmd_verify(cfg);
    if (*ind) return cmd_independence(cfg, args);
    if (*car) return cmd_carleson(cfg, args);
    if (*emb) return cmd_embed(cfg, args);
    if (*gen) return cmd_generate(cfg, args);
    return kExitParse;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
