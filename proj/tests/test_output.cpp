#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "test_util.hpp"
#include "tumorbim/output.hpp"

using namespace tumorbim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tumorbim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string s; std::getline(in, s);) out.push_back(s);
  return out;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(TUMORSIM_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("output") {
  TEST_CASE("atomic csv write with full precision") {
    const auto dir = scratch_dir("csv");
    write_csv_atomic(dir / "a.csv", "x,y", {{0.1, 1.0 / 3.0}, {2.0, -1e-300}});
    const auto l = lines(dir / "a.csv");
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "x,y");
    CHECK(l[1] == "0.10000000000000001,0.33333333333333331");
    CHECK(std::stod(l[2].substr(2)) == -1e-300);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename() == "a.csv");
    fs::remove_all(dir);
  }

  TEST_CASE("snapshot and diagnostics layout") {
    CHECK(snapshot_name(123) == "interface_000123.csv");
    const auto dir = scratch_dir("snap");
    const Curve c = testutil::circle(16, 2.0);
    write_snapshot(dir, 7, c, reconstruct(c), std::vector<double>(16, 0.25));
    const auto l = lines(dir / "interface_000007.csv");
    REQUIRE(l.size() == 17);
    CHECK(l[0] == "alpha,x,y,kappa,V");
    CHECK(l[1].rfind("0,2,0,0.5,0.25", 0) == 0);
    write_diagnostics(dir / "diagnostics.csv", {{0.0, 2.0, 12.5, 12.6, 0.0, 0.5, 3, 4}});
    const auto d = lines(dir / "diagnostics.csv");
    CHECK(d[0] == kDiagnosticsHeader);
    CHECK(d[1].substr(d[1].size() - 4) == ",3,4");
    fs::remove_all(dir);
  }

  TEST_CASE("command line exit codes and products") {
    const auto dir = scratch_dir("cli");
    std::ofstream(dir / "ok.json") << R"({"N": 32, "dt": 0.01, "t_final": 0.05, "snapshot_interval": 2,
      "A": 0.5, "lambda": 1.5, "S_inv": 2.0, "R0": 2.0, "modes": [[3, 0.05, "cos"]]})";
    std::ofstream(dir / "bad.json") << R"({"N": 100, "dt": 0.01, "t_final": 1, "A": 0, "lambda": 1, "S_inv": 0, "R0": 1})";
    const std::string out = (dir / "run").string();
    CHECK(run_cli("simulate " + (dir / "ok.json").string() + " --output-dir " + out) == 0);
    CHECK(fs::exists(fs::path(out) / "diagnostics.csv"));
    CHECK(fs::exists(fs::path(out) / "interface_000000.csv"));
    CHECK(fs::exists(fs::path(out) / "interface_000002.csv"));
    CHECK(fs::exists(fs::path(out) / "interface_000005.csv"));
    CHECK(lines(fs::path(out) / "diagnostics.csv").size() == 7);
    CHECK(run_cli("simulate " + (dir / "bad.json").string()) == 2);
    CHECK(run_cli("simulate " + (dir / "missing.json").string()) == 2);
    CHECK(run_cli("simulate " + (dir / "ok.json").string() + " --set colour=1") == 2);
    const std::string lin = (dir / "lin").string();
    CHECK(run_cli("linear " + (dir / "ok.json").string() + " --output-dir " + lin) == 0);
    CHECK(lines(fs::path(lin) / "growth_rate.csv")[0] == "A,R,dRdt");
    CHECK(lines(fs::path(lin) / "marginal.csv")[0] == "R,lambda,S_M_inv");
    CHECK(lines(fs::path(lin) / "trajectory.csv")[0] == "t,R,delta_over_R,A");
    fs::remove_all(dir);
  }
}
