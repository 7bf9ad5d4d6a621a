#include "gtent/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace gtent::io {

namespace {

constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw FormatError("truncated binary grid function");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

std::ofstream open_out(const std::filesystem::path& p, bool binary = false) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, binary ? std::ios::binary : std::ios::out);
  if (!os) throw FormatError("cannot open " + p.string() + " for writing");
  os.precision(17);
  return os;
}

std::ifstream open_in(const std::filesystem::path& p, bool binary = false) {
  std::ifstream is(p, binary ? std::ios::binary : std::ios::in);
  if (!is) throw FormatError("cannot open " + p.string());
  return is;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

double number(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw FormatError("not a number: '" + s + "'");
  return v;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(const std::filesystem::path& p) {
  auto is = open_in(p);
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty CSV file " + p.string());
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) throw FormatError("CSV row has wrong number of columns");
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(number(c));
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::vector<std::string> coord_names(int dim, const char* base) {
  if (dim == 1) return {base};
  return {std::string(base) + "0", std::string(base) + "1"};
}

void write_header(std::ostream& os, int dim, const char* base, std::initializer_list<const char*> rest) {
  bool first = true;
  for (const auto& n : coord_names(dim, base)) {
    os << (first ? "" : ",") << n;
    first = false;
  }
  for (const char* r : rest) os << "," << r;
  os << "\n";
}

int dim_from_header(const std::vector<std::string>& h, const char* base, std::size_t trailing) {
  if (h.size() == 1 + trailing && h[0] == base) return 1;
  if (h.size() == 2 + trailing && h[0] == std::string(base) + "0" && h[1] == std::string(base) + "1") return 2;
  throw FormatError("unrecognized CSV header");
}

std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Axis axis_from(const std::vector<double>& xs) {
  if (xs.size() < 2) throw FormatError("grid axis needs at least two nodes");
  Axis a{xs.front(), xs.back(), xs.size()};
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - a.node(i)) > 1e-9 * std::max(1.0, std::abs(a.hi - a.lo)))
      throw FormatError("spatial nodes are not uniformly spaced");
  return a;
}

std::size_t spatial_index(const HalfSpaceGrid& g, const std::vector<double>& c) {
  Point y = Point::from(c);
  std::size_t i = g.nearest_node(y);
  if (distance(g.node(i), y) > 1e-9 * std::max(1.0, g.cell())) throw FormatError("CSV point is not a grid node");
  return i;
}

}  // namespace

void write_binary(const GridFunction& f, const std::filesystem::path& path) {
  auto os = open_out(path, true);
  const auto& g = f.grid();
  os.write("GTNT", 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, f.continuous_intent() ? 1u : 0u);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) {
    put<double>(os, g.axis(a).lo);
    put<double>(os, g.axis(a).hi);
    put<std::uint64_t>(os, g.axis(a).count);
  }
  put<double>(os, g.t_min());
  put<double>(os, g.t_max());
  put<std::uint64_t>(os, g.nt());
  for (double v : f.values()) put<double>(os, v);
  if (!os) throw FormatError("write failed: " + path.string());
}

GridFunction read_binary(const std::filesystem::path& path) {
  auto is = open_in(path, true);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "GTNT", 4) != 0) throw FormatError("bad magic in " + path.string());
  auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw FormatError("unsupported binary version " + std::to_string(version));
  auto flags = get<std::uint32_t>(is);
  auto dim = get<std::uint32_t>(is);
  if (dim < 1 || dim > 2) throw FormatError("binary grid dimension must be 1 or 2");
  std::vector<Axis> axes;
  for (std::uint32_t a = 0; a < dim; ++a) {
    double lo = get<double>(is), hi = get<double>(is);
    auto n = get<std::uint64_t>(is);
    axes.push_back(Axis{lo, hi, static_cast<std::size_t>(n)});
  }
  double t0 = get<double>(is), t1 = get<double>(is);
  auto nt = get<std::uint64_t>(is);
  GridPtr g;
  try {
    g = HalfSpaceGrid::make(axes, t0, t1, static_cast<std::size_t>(nt));
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("invalid grid header: ") + e.what());
  }
  std::vector<double> v(g->size());
  for (double& x : v) x = get<double>(is);
  char extra;
  if (is.read(&extra, 1)) throw FormatError("trailing bytes in " + path.string());
  return GridFunction(g, std::move(v), (flags & 1u) != 0);
}

void write_csv(const GridFunction& f, const std::filesystem::path& path) {
  auto os = open_out(path);
  const auto& g = f.grid();
  write_header(os, g.dim(), "y", {"t", "value"});
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t j = 0; j < g.nt(); ++j) {
      for (int a = 0; a < g.dim(); ++a) os << g.node(i)[a] << ",";
      os << g.t(j) << "," << f(i, j) << "\n";
    }
}

GridFunction read_csv(const std::filesystem::path& path) {
  auto tab = read_table(path);
  int dim = dim_from_header(tab.header, "y", 2);
  if (tab.header[static_cast<std::size_t>(dim)] != "t" || tab.header.back() != "value")
    throw FormatError("grid function CSV needs columns y..., t, value");
  std::vector<std::vector<double>> coords(static_cast<std::size_t>(dim));
  std::vector<double> ts;
  for (const auto& r : tab.rows) {
    for (int a = 0; a < dim; ++a) coords[static_cast<std::size_t>(a)].push_back(r[static_cast<std::size_t>(a)]);
    ts.push_back(r[static_cast<std::size_t>(dim)]);
  }
  std::vector<Axis> axes;
  for (auto& c : coords) axes.push_back(axis_from(distinct(c)));
  auto tv = distinct(ts);
  if (tv.size() < 2 || tv.front() <= 0.0) throw FormatError("t nodes must be positive and at least two");
  auto g = HalfSpaceGrid::make(axes, tv.front(), tv.back(), tv.size());
  for (std::size_t j = 0; j < tv.size(); ++j)
    if (std::abs(tv[j] - g->t(j)) > 1e-9 * tv[j]) throw FormatError("t nodes are not log-uniform");
  if (tab.rows.size() != g->size()) throw FormatError("CSV does not list every grid node exactly once");
  std::vector<double> v(g->size(), 0.0);
  std::vector<std::uint8_t> seen(g->size(), 0);
  for (const auto& r : tab.rows) {
    std::size_t i = spatial_index(*g, std::vector<double>(r.begin(), r.begin() + dim));
    std::size_t j = g->nearest_t(r[static_cast<std::size_t>(dim)]);
    std::size_t k = g->index(i, j);
    if (seen[k]) throw FormatError("duplicate node in CSV");
    seen[k] = 1;
    v[k] = r.back();
  }
  return GridFunction(g, std::move(v));
}

GridFunction read_function(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? read_csv(path) : read_binary(path);
}

void write_function(const GridFunction& f, const std::filesystem::path& path) {
  if (path.extension() == ".csv")
    write_csv(f, path);
  else
    write_binary(f, path);
}

void write_csv(const SpatialFunction& g, const std::filesystem::path& path, const char* column) {
  auto os = open_out(path);
  const auto& grid = g.grid();
  write_header(os, grid.dim(), "x", {column});
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int a = 0; a < grid.dim(); ++a) os << grid.node(i)[a] << ",";
    os << g[i] << "\n";
  }
}

SpatialFunction read_spatial_csv(GridPtr grid, const std::filesystem::path& path) {
  auto tab = read_table(path);
  int dim = dim_from_header(tab.header, "x", 1);
  if (dim != grid->dim()) throw FormatError("spatial CSV dimension does not match the grid");
  if (tab.rows.size() != grid->spatial_size()) throw FormatError("spatial CSV must list every node once");
  std::vector<double> v(grid->spatial_size(), 0.0);
  for (const auto& r : tab.rows) v[spatial_index(*grid, std::vector<double>(r.begin(), r.begin() + dim))] = r.back();
  return SpatialFunction(std::move(grid), std::move(v));
}

void write_csv(const RegionMask& m, const std::filesystem::path& path) {
  auto os = open_out(path);
  const auto& g = m.grid();
  if (m.kind() == MaskKind::Spatial) {
    write_header(os, g.dim(), "x", {"inside"});
    for (std::size_t i = 0; i < g.spatial_size(); ++i) {
      for (int a = 0; a < g.dim(); ++a) os << g.node(i)[a] << ",";
      os << (m[i] ? 1 : 0) << "\n";
    }
    return;
  }
  write_header(os, g.dim(), "y", {"t", "inside"});
  for (std::size_t i = 0; i < g.spatial_size(); ++i)
    for (std::size_t j = 0; j < g.nt(); ++j) {
      for (int a = 0; a < g.dim(); ++a) os << g.node(i)[a] << ",";
      os << g.t(j) << "," << (m[g.index(i, j)] ? 1 : 0) << "\n";
    }
}

RegionMask read_mask_csv(GridPtr grid, MaskKind kind, const std::filesystem::path& path) {
  auto tab = read_table(path);
  bool spatial = kind == MaskKind::Spatial;
  int dim = dim_from_header(tab.header, spatial ? "x" : "y", spatial ? 1 : 2);
  if (dim != grid->dim()) throw FormatError("mask CSV dimension does not match the grid");
  std::size_t n = spatial ? grid->spatial_size() : grid->size();
  if (tab.rows.size() != n) throw FormatError("mask CSV must list every node once");
  std::vector<std::uint8_t> bits(n, 0);
  for (const auto& r : tab.rows) {
    double v = r.back();
    if (v != 0.0 && v != 1.0) throw FormatError("mask entries must be 0 or 1");
    std::size_t i = spatial_index(*grid, std::vector<double>(r.begin(), r.begin() + dim));
    std::size_t k = spatial ? i : grid->index(i, grid->nearest_t(r[static_cast<std::size_t>(dim)]));
    bits[k] = v != 0.0;
  }
  return RegionMask(std::move(grid), kind, std::move(bits));
}

void write_csv(const DiscreteMeasure& mu, int dim, const std::filesystem::path& path) {
  auto os = open_out(path);
  write_header(os, dim, "y", {"t", "weight"});
  for (const auto& q : mu.points) {
    for (int a = 0; a < dim; ++a) os << q.p.y[a] << ",";
    os << q.p.t << "," << q.w << "\n";
  }
}

DiscreteMeasure read_measure_csv(const std::filesystem::path& path) {
  auto tab = read_table(path);
  int dim = dim_from_header(tab.header, "y", 2);
  if (tab.header[static_cast<std::size_t>(dim)] != "t" || tab.header.back() != "weight")
    throw FormatError("measure CSV needs columns y..., t, weight");
  DiscreteMeasure mu;
  for (const auto& r : tab.rows) {
    double t = r[static_cast<std::size_t>(dim)];
    if (!(t > 0.0) || !std::isfinite(r.back())) throw FormatError("measure points need t > 0 and finite weight");
    mu.points.push_back(WeightedPoint{UpperPoint{Point::from(std::vector<double>(r.begin(), r.begin() + dim)), t}, r.back()});
  }
  return mu;
}

}  // namespace gtent::io
