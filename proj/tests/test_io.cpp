#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "sixv/io.hpp"

using namespace sixv;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SIXV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sixv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config text") {
  const auto kv = parse_config_text("# header\nlambda = pi/4  # comment\n\n  N=3\nemit = csv, json\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"lambda", "pi/4"});
  CHECK(kv[1].first == "N");
  CHECK_THROWS_AS(parse_config_text("lambda pi/4"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(" = 3"), ConfigError);
}

TEST_CASE("config values") {
  RunConfig c;
  c.set("N", "6");
  c.set("burn-in", "50");
  c.set("emit", "csv,svg");
  c.set("quick", "yes");
  c.set("omega", "-pi/8");
  CHECK(c.n == 6);
  CHECK(c.burn_in == 50);
  CHECK(c.emit_csv);
  CHECK_FALSE(c.emit_json);
  CHECK(c.emit_svg);
  CHECK(c.quick);
  CHECK(c.get("emit") == "csv,svg");
  CHECK_THROWS_AS(c.set("N", "six"), ConfigError);
  CHECK_THROWS_AS(c.set("N", "6x"), ConfigError);
  CHECK_THROWS_AS(c.set("lambda", "pie"), ConfigError);
  CHECK_THROWS_AS(c.set("colour", "red"), ConfigError);
  CHECK_THROWS_AS(c.set("init", "random"), ConfigError);
  CHECK_THROWS_AS(c.set("emit", "png"), ConfigError);
  PrecisionScope scope(50);
  CHECK(abs(c.spectral().omega + pi() / 8) < Real("1e-49"));
}

TEST_CASE("entries round trip") {
  RunConfig a;
  a.set("lambdas", "0.5,pi/5");
  a.set("epsilon", "0.05");
  a.set("seed", "123");
  RunConfig b;
  for (const auto& [k, v] : a.entries()) b.set(k, v);
  CHECK(b.entries() == a.entries());
  CHECK(a.get("epsilon") == "0.05");
  CHECK(config_keys().size() == a.entries().size());
  PrecisionScope scope(30);
  CHECK(a.lambda_list().size() == 2);
  std::ostringstream os;
  write_metadata_lines(os, a);
  CHECK(os.str().find("# seed = 123\n") != std::string::npos);
  CHECK(config_json(a)["lambdas"] == "0.5,pi/5");
}

TEST_CASE("svg plot") {
  RunConfig c;
  const std::vector<TangentLine> lines{tangent_line(0.25), tangent_line(0.5)};
  const std::vector<CurveSample> curve{arc_nw(-0.3), arc_nw(-0.2)};
  std::ostringstream os;
  write_curve_svg(os, c, curve, lines);
  const std::string svg = os.str();
  CHECK(svg.find("<metadata>") != std::string::npos);
  CHECK(svg.find("class=\"semicircle\"") != std::string::npos);
  CHECK(svg.find("class=\"envelope\"") != std::string::npos);
  std::size_t count = 0;
  for (auto p = svg.find("class=\"tangent\""); p != std::string::npos; p = svg.find("class=\"tangent\"", p + 1)) ++count;
  CHECK(count == 2);
}

TEST_CASE("command-line exit codes") {
  CHECK(run_cli("--bogus") == 2);
  CHECK(run_cli("weights --N x") == 2);
  CHECK(run_cli("weights --lambda 0.3") == 0);
  CHECK(run_cli("weights --lambda -0.3") == 1);
  CHECK(run_cli("enumerate --N 11") == 1);
  CHECK(run_cli("det --hN --N 6 --omega 0.1") == 0);
  CHECK(run_cli("verify --config /nonexistent.cfg") == 2);
}

TEST_CASE("curve svg has the semicircle and tangent lines") {
  const auto dir = scratch("curve");
  REQUIRE(run_cli("curve --lambda pi/4 --emit svg --out " + dir.string()) == 0);
  const std::string svg = slurp(dir / "curve.svg");
  CHECK(svg.find("class=\"semicircle\"") != std::string::npos);
  std::size_t count = 0;
  for (auto p = svg.find("class=\"tangent\""); p != std::string::npos; p = svg.find("class=\"tangent\"", p + 1)) ++count;
  CHECK(count >= 10);
  CHECK(svg.find("lambda = pi/4") != std::string::npos);
}

TEST_CASE("identical configuration gives identical files") {
  const auto base = scratch("repro");
  {
    std::ofstream cfg(base / "run.cfg");
    cfg << "N = 8\nseed = 5\nsweeps = 400\nburn_in = 40\nthinning = 2\nbatch = 20\nemit = csv,json,svg\n";
  }
  const std::string run = "mc --config " + (base / "run.cfg").string() + " --out " + (base / "out").string();
  REQUIRE(run_cli(run) == 0);
  std::map<std::string, std::string> first;
  for (const auto& e : std::filesystem::directory_iterator(base / "out")) first[e.path().filename()] = slurp(e.path());
  REQUIRE(run_cli(run) == 0);
  std::size_t files = 0;
  for (const auto& [name, text] : first) {
    CHECK(slurp(base / "out" / name) == text);
    CHECK(text.find("seed") != std::string::npos);
    CHECK(text.find("sweeps") != std::string::npos);
    ++files;
  }
  CHECK(files >= 3);
  REQUIRE(run_cli(run + " --seed 6") == 0);
  CHECK(slurp(base / "out" / "density.csv") != first["density.csv"]);
}

}
