#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

const fs::path kWork = fs::current_path() / "cli_work";

Run run(const std::string& args) {
  fs::create_directories(kWork);
  auto out = kWork / "stdout.txt";
  std::string cmd = std::string(GTENT_CLI) + " " + args + " > " + out.string() + " 2> " + (kWork / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string path(const std::string& name) { return (kWork / name).string(); }

Json without_timestamp(Json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("generate and norm") {
  REQUIRE(run("generate tent " + path("tent.gtnt") + " --shape 0.3,0.8,2").code == 0);
  auto r = run("norm " + path("tent.gtnt") + " --p 1,2 --q 2");
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["command"] == "norm");
  CHECK(j["pass"] == true);
  REQUIRE(j["norms"].size() == 2);
  CHECK(j["norms"][0]["norm"].get<double>() > 0.0);
  // T^{2,2} of an indicator with amplitude 2 is twice that of amplitude 1
  REQUIRE(run("generate tent " + path("tent1.gtnt") + " --shape 0.3,0.8").code == 0);
  auto one = run("norm " + path("tent1.gtnt") + " --p 2 --q 2").json();
  CHECK(j["norms"][1]["norm"].get<double>() == doctest::Approx(2.0 * one["norms"][0]["norm"].get<double>()));
}

TEST_CASE("decompose writes a decomposition") {
  REQUIRE(run("generate tent " + path("dtent.gtnt") + " --shape -0.5,0.6").code == 0);
  auto r = run("decompose " + path("dtent.gtnt") + " --out " + path("dec"));
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["invalid_atoms"] == 0);
  CHECK(j["reconstruction_error"].get<double>() <= 1e-12);
  CHECK(fs::exists(kWork / "dec" / "decomposition.json"));
  CHECK(fs::exists(kWork / "dec" / "decompose.json"));

  REQUIRE(run("generate bump " + path("bump.gtnt") + " --shape 0.2,0.3,0.6,1.2,1").code == 0);
  auto s = run("decompose " + path("bump.gtnt") + " --q inf");
  CHECK(s.code == 0);
  CHECK(s.json()["audit"]["partition_ok"] == true);
}

TEST_CASE("verify is deterministic") {
  auto a = run("verify --suites tpp_identity,ball_bracket,comparison_lemma");
  auto b = run("verify --suites tpp_identity,ball_bracket,comparison_lemma --threads 1");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(without_timestamp(a.json()) == without_timestamp(b.json()));
  CHECK(a.json().contains("timestamp"));
  auto c = run("verify --suites tpp_identity --seed 7");
  CHECK(c.json()["seed"] == 7);
}

TEST_CASE("verify selection and mutation") {
  CHECK(run("verify --suites ''").code == 2);
  CHECK(run("verify --suites no_such_suite").code == 2);
  CHECK(run("verify --suites tpp_identity --mutation flip_signs").code == 2);
  auto clean = run("verify --suites embedding").json();
  auto bug = run("verify --suites embedding --mutation d_truncation");
  CHECK(bug.code != 0);
  auto jb = bug.json();
  CHECK(clean["suites"][0]["metrics"]["support_failures"] == 0);
  CHECK(jb["suites"][0]["metrics"]["support_failures"].get<int>() > 0);
  CHECK(jb["suites"][0]["pass"] == false);
}

TEST_CASE("config file and precedence") {
  {
    std::ofstream(kWork / "run.ini") << "[run]\nseed = 5\nsuites = tpp_identity\n";
    std::ofstream(kWork / "bad.ini") << "[run]\nseeds = 5\n";
  }
  auto a = run("--config " + path("run.ini") + " verify");
  REQUIRE(a.code == 0);
  CHECK(a.json()["seed"] == 5);
  auto b = run("--config " + path("run.ini") + " verify --seed 6");
  CHECK(b.json()["seed"] == 6);
  CHECK(run("--config " + path("bad.ini") + " verify").code == 1);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("norm").code == 1);
  CHECK(run("norm --bogus x").code == 1);
  CHECK(run("norm " + path("does_not_exist.gtnt")).code == 1);
  REQUIRE(run("generate tent " + path("g.gtnt") + " --shape 0,0.5").code == 0);
  // configured grid differs from the file's grid
  CHECK(run("norm " + path("g.gtnt") + " --grid 64,16").code == 2);
  CHECK(run("norm " + path("g.gtnt") + " --q 0.5").code == 2);
  CHECK(run("generate blob " + path("x.gtnt")).code == 2);
}

TEST_CASE("independence, carleson and embed") {
  REQUIRE(run("generate bump " + path("ib.gtnt") + " --shape 0.1,0.3,0.6,1.2,1").code == 0);
  auto r = run("independence " + path("ib.gtnt") + " --alpha 0.5,1,2 --beta 0.5,1,2 --out " + path("ind"));
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["functions"][0]["ratios"].size() == 9);
  CHECK(j["family_max_min"].get<double>() < 100.0);
  CHECK(fs::exists(kWork / "ind" / "independence_ib.csv"));

  std::ofstream(kWork / "mu.csv") << "y,t,weight\n0.1,0.2,1.0\n0.15,0.05,0.5\n";
  auto c = run("carleson " + path("mu.csv") + " --function " + path("ib.gtnt") + " --delta 2");
  REQUIRE(c.code == 0);
  CHECK(c.json()["carleson"]["norm"].get<double>() > 0.0);
  CHECK(c.json()["pairing"]["finite"] == true);
  auto z = run("carleson " + path("mu.csv") + " --delta 0.5 --grid 128,32");
  CHECK(z.code == 0);

  REQUIRE(run("generate tent " + path("atom.gtnt") + " --shape 0.4,0.6").code == 0);
  auto e = run("embed " + path("atom.gtnt") + " --ball 0.4,0.6 --out " + path("emb"));
  REQUIRE(e.code == 0);
  CHECK(e.json()["h1_atom"]["support_ok"] == true);
  CHECK(fs::exists(kWork / "emb" / "embed.csv"));
}
