#include "gapforge/downstream.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kTiny = "p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n";

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("gapforge_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Exit status of the CLI; stdout goes to `out` when given.
int run(const std::string& args, const std::string& out = "") {
  std::string cmd = std::string(GAPFORGE_CLI) + " " + args;
  cmd += out.empty() ? " >/dev/null 2>&1" : " >" + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2") {
    Scratch s;
    const auto in = s.write("tiny.cnf", kTiny);
    CHECK(run("reduce bogus --in " + in + " --out " + s.path("o") + " --seed 1") == 2);
    CHECK(run("reduce labelcover --in " + in + " --out " + s.path("o") + " --k 3 --t 2 --p 4/5") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("verify no-such-suite --seed 1") == 2);
  }

  TEST_CASE("malformed input exits 1") {
    Scratch s;
    const auto bad = s.write("bad.cnf", "p cnf 2 1\n1 5 0\n");
    CHECK(run("solve max-val --in " + bad + " --seed 1") == 1);
  }

  TEST_CASE("solve max-val on the tiny formula") {
    Scratch s;
    const auto in = s.write("tiny.cnf", kTiny);
    REQUIRE(run("solve max-val --in " + in + " --seed 1 --json", s.path("r.json")) == 0);
    const auto j = nlohmann::json::parse(slurp(s.path("r.json")));
    CHECK(j.dump().find("\"010\"") != std::string::npos);
  }

  TEST_CASE("reduce labelcover is byte-identical on rerun") {
    Scratch s;
    const auto in = s.write("tiny.cnf", kTiny);
    const std::string args = "reduce labelcover --in " + in + " --k 3 --t 2 --p 4/5 --seed 7 --out ";
    REQUIRE(run(args + s.path("a.lc")) == 0);
    REQUIRE(run(args + s.path("b.lc")) == 0);
    CHECK(slurp(s.path("a.lc")) == slurp(s.path("b.lc")));
    CHECK_FALSE(slurp(s.path("a.lc")).empty());
    auto pa = nlohmann::json::parse(slurp(s.path("a.lc.prov.json")));
    auto pb = nlohmann::json::parse(slurp(s.path("b.lc.prov.json")));
    CHECK(pa["output"]["sha256"] == pb["output"]["sha256"]);
    CHECK(pa["input"]["sha256"] == pb["input"]["sha256"]);
    CHECK(pa["seed"] == 7);
  }

  TEST_CASE("clustering output passes the triangle audit") {
    Scratch s;
    const auto in = s.write("c.cov", gapforge::write_coverage(gapforge::CoverageInstance(4, {{0, 1}, {2, 3}, {1, 2}}, 2)));
    REQUIRE(run("reduce clustering --in " + in + " --out " + s.path("c.clu") + " --seed 1") == 0);
    const auto C = gapforge::parse_clustering(slurp(s.path("c.clu")));
    CHECK_FALSE(gapforge::find_triangle_violation(C));
    CHECK(C.clients() == 4);
  }

  TEST_CASE("max-coverage report and verify") {
    Scratch s;
    const auto in = s.write("c.cov", gapforge::write_coverage(gapforge::CoverageInstance(
                                          6, {{0, 1, 2, 3}, {0, 1, 4}, {2, 3, 5}}, 2)));
    REQUIRE(run("solve max-coverage --in " + in + " --seed 1 --json", s.path("r.json")) == 0);
    const auto j = nlohmann::json::parse(slurp(s.path("r.json")));
    CHECK(j.dump().find("\"greedy_within_bound\":true") != std::string::npos);
    CHECK(run("verify partition-identity --seed 1") == 0);
    REQUIRE(run("verify abss --seed 4 --json", s.path("v1.json")) == 0);
    REQUIRE(run("verify abss --seed 4 --json", s.path("v2.json")) == 0);
    CHECK(slurp(s.path("v1.json")) == slurp(s.path("v2.json")));
  }
}
