#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "gtent/geometry.hpp"

namespace gtent::cli {

// Exit codes shared by every command.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitNumeric = 3;

struct CommandArgs {
  std::vector<std::string> inputs;
  std::string measure;          // carleson
  std::string function;         // carleson, optional pairing partner
  std::optional<Ball> ball;     // embed: treat the input as an atom over this ball
  bool drop_truncation = false; // embed
  std::string kind;             // generate
  std::vector<double> shape;    // generate: kind-specific numbers
};

// Each command prints a JSON report on stdout, writes it to <out>/<name>.json
// when an output directory is set, and returns its exit code.
int cmd_norm(const RunConfig& cfg, const CommandArgs& args);
int cmd_decompose(const RunConfig& cfg, const CommandArgs& args);
int cmd_verify(const RunConfig& cfg);
int cmd_independence(const RunConfig& cfg, const CommandArgs& args);
int cmd_carleson(const RunConfig& cfg, const CommandArgs& args);
int cmd_embed(const RunConfig& cfg, const CommandArgs& args);
int cmd_generate(const RunConfig& cfg, const CommandArgs& args);

}  // namespace gtent::cli
