#include <doctest.h>

#include <fstream>
#include <unistd.h>

#include "config.hpp"
#include "gtent/error.hpp"

using namespace gtent;
using namespace gtent::cli;

namespace {

std::filesystem::path write_ini(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / (name + std::to_string(::getpid()) + ".ini");
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("config defaults") {
  RunConfig cfg;
  CHECK(cfg.seed == 42);
  CHECK(cfg.grid()->same_as(*HalfSpaceGrid::desk_default()));
  CHECK_FALSE(cfg.grid_given);
  CHECK_FALSE(cfg.suites.has_value());
}

TEST_CASE("config file values and list parsing") {
  auto p = write_ini("cfg_ok", "[grid]\nnx = 128\nnt=32\n[params]\nq = 1, 2, inf\nalpha = 0.5,2\n"
                               "[run]\nseed = 7\nsuites = tpp_identity, ball_bracket\n");
  RunConfig cfg;
  apply_file(cfg, p);
  CHECK(cfg.nx == 128);
  CHECK(cfg.nt == 32);
  CHECK(cfg.grid_given);
  REQUIRE(cfg.q.size() == 3);
  CHECK(std::isinf(cfg.q[2]));
  CHECK(cfg.alpha == std::vector<double>{0.5, 2.0});
  CHECK(cfg.seed == 7);
  CHECK(*cfg.suites == std::vector<std::string>{"tpp_identity", "ball_bracket"});
  // flags applied afterwards win
  apply_value(cfg, "run.seed", "9");
  CHECK(cfg.seed == 9);
  std::filesystem::remove(p);
}

TEST_CASE("config rejects unknown and malformed entries") {
  RunConfig cfg;
  auto unknown = write_ini("cfg_unknown", "[grid]\nnx = 64\nwidth = 3\n");
  CHECK_THROWS_AS(apply_file(cfg, unknown), FormatError);
  auto section = write_ini("cfg_section", "[plot]\ncolor = red\n");
  CHECK_THROWS_AS(apply_file(cfg, section), FormatError);
  auto bad = write_ini("cfg_bad", "[params]\nbeta = one\n");
  CHECK_THROWS_AS(apply_file(cfg, bad), FormatError);
  auto garbage = write_ini("cfg_garbage", "[grid\nnx = 1\n");
  CHECK_THROWS_AS(apply_file(cfg, garbage), FormatError);
  CHECK_THROWS_AS(apply_value(cfg, "grid.nx", "12x"), FormatError);
  CHECK_THROWS_AS(apply_value(cfg, "params.p", ""), FormatError);
  for (const auto& f : {unknown, section, bad, garbage}) std::filesystem::remove(f);
}

TEST_CASE("empty suite list is kept distinct from no list") {
  RunConfig cfg;
  apply_value(cfg, "run.suites", "");
  REQUIRE(cfg.suites.has_value());
  CHECK(cfg.suites->empty());
  CHECK(split("a, b ,c", ',') == std::vector<std::string>{"a", "b", "c"});
}
