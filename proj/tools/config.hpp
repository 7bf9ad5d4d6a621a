#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gtent/grid.hpp"

namespace gtent::cli {

// Settings shared by every command. Precedence, lowest first: built-in
// defaults, the --config file, command-line flags.
struct RunConfig {
  // [grid]
  std::size_t nx = 512;
  std::size_t nt = 128;
  double y_min = -8.0;
  double y_max = 8.0;
  double t_min = 1e-3;
  double t_max = 8.0;
  bool grid_given = false;  // set when any grid key was supplied
  // [params]; list-valued entries are comma separated, "inf" allowed for p, q
  std::vector<double> p{1.0};
  std::vector<double> q{2.0};
  std::vector<double> alpha{1.0};
  std::vector<double> beta{1.0};
  double delta = 1.0;
  double eta = 0.5;
  double c_overlap = 3.0;
  // [dictionary]
  std::size_t stride = 4;
  int ladder = 7;
  // [run]
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out;
  std::optional<std::vector<std::string>> suites;
  std::string mutation;

  GridPtr grid() const;
};

// INI file with sections grid, params, dictionary, run. Unknown sections or
// keys and malformed values throw FormatError.
void apply_file(RunConfig& cfg, const std::filesystem::path& path);

// Sets one key given as "section.key"; the same parser backs the file and
// the command-line overrides.
void apply_value(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

std::vector<double> parse_list(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

}  // namespace gtent::cli
