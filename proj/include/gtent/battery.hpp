#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtent/grid.hpp"
#include "gtent/serialize.hpp"

namespace gtent {

struct BatteryOptions {
  std::uint64_t seed = 42;
  // nullopt runs every suite; an explicit empty list is an error
  std::optional<std::vector<std::string>> suites;
  // "d_truncation" drops the local region in the embedding suite
  std::string mutation;
  GridPtr grid;  // defaults to the desk grid
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  Json metrics;
  double seconds = 0.0;  // wall time, kept out of the JSON report
};

const std::vector<std::string>& suite_names();

std::vector<SuiteResult> run_battery(const BatteryOptions& opts);

// Report with a "timestamp" field that comparisons must ignore.
Json battery_report(const BatteryOptions& opts, const std::vector<SuiteResult>& results);

// The report with volatile fields removed.
Json comparable(Json report);

}  // namespace gtent
