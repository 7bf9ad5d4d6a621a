#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <functional>
#include <limits>
#include <map>

#include "gtent/error.hpp"

namespace gtent::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw) {
  auto s = trim(raw);
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw FormatError("not a number: '" + raw + "'");
  return v;
}

template <typename Int>
Int parse_int(const std::string& raw) {
  auto s = trim(raw);
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw FormatError("not an integer: '" + raw + "'");
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m{
      {"grid.nx", [](RunConfig& c, const std::string& v) { c.nx = parse_int<std::size_t>(v); }},
      {"grid.nt", [](RunConfig& c, const std::string& v) { c.nt = parse_int<std::size_t>(v); }},
      {"grid.y_min", [](RunConfig& c, const std::string& v) { c.y_min = parse_double(v); }},
      {"grid.y_max", [](RunConfig& c, const std::string& v) { c.y_max = parse_double(v); }},
      {"grid.t_min", [](RunConfig& c, const std::string& v) { c.t_min = parse_double(v); }},
      {"grid.t_max", [](RunConfig& c, const std::string& v) { c.t_max = parse_double(v); }},
      {"params.p", [](RunConfig& c, const std::string& v) { c.p = parse_list(v); }},
      {"params.q", [](RunConfig& c, const std::string& v) { c.q = parse_list(v); }},
      {"params.alpha", [](RunConfig& c, const std::string& v) { c.alpha = parse_list(v); }},
      {"params.beta", [](RunConfig& c, const std::string& v) { c.beta = parse_list(v); }},
      {"params.delta", [](RunConfig& c, const std::string& v) { c.delta = parse_double(v); }},
      {"params.eta", [](RunConfig& c, const std::string& v) { c.eta = parse_double(v); }},
      {"params.c_overlap", [](RunConfig& c, const std::string& v) { c.c_overlap = parse_double(v); }},
      {"dictionary.stride", [](RunConfig& c, const std::string& v) { c.stride = parse_int<std::size_t>(v); }},
      {"dictionary.ladder", [](RunConfig& c, const std::string& v) { c.ladder = parse_int<int>(v); }},
      {"run.seed", [](RunConfig& c, const std::string& v) { c.seed = parse_int<std::uint64_t>(v); }},
      {"run.threads", [](RunConfig& c, const std::string& v) { c.threads = parse_int<int>(v); }},
      {"run.out", [](RunConfig& c, const std::string& v) { c.out = trim(v); }},
      {"run.suites", [](RunConfig& c, const std::string& v) { c.suites = split(v, ','); }},
      {"run.mutation", [](RunConfig& c, const std::string& v) { c.mutation = trim(v); }},
  };
  return m;
}

}  // namespace

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& item : split(s, ',')) v.push_back(parse_double(item));
  if (v.empty()) throw FormatError("empty value list");
  return v;
}

GridPtr RunConfig::grid() const {
  return HalfSpaceGrid::make({Axis{y_min, y_max, nx}}, t_min, t_max, nt);
}

void apply_value(RunConfig& cfg, const std::string& dotted_key, const std::string& value) {
  auto it = setters().find(dotted_key);
  if (it == setters().end()) throw FormatError("unknown configuration key '" + dotted_key + "'");
  it->second(cfg, value);
  if (dotted_key.rfind("grid.", 0) == 0) cfg.grid_given = true;
}

void apply_file(RunConfig& cfg, const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw FormatError(std::string("bad config file: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw FormatError("config key '" + section + "' is outside any section");
    for (const auto& [key, node] : body) apply_value(cfg, section + "." + key, node.get_value<std::string>());
  }
}

}  // namespace gtent::cli
