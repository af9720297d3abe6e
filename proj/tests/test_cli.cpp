#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "test_util.hpp"

// SATCOV_BIN and SATCOV_SCENARIO_DIR come from the build system.
#ifndef SATCOV_BIN
#error "SATCOV_BIN must be defined"
#endif
#ifndef SATCOV_SCENARIO_DIR
#error "SATCOV_SCENARIO_DIR must be defined"
#endif

using testutil::slurp;
using testutil::split_lines;
using testutil::TempDir;

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(SATCOV_BIN) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scenario(const std::string& name) {
  return (fs::path(SATCOV_SCENARIO_DIR) / name).string();
}

}  // namespace

TEST_CASE("help text describes subcommands, schemas, exit codes") {
  const RunResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("coverage analysis for clustered LEO satellite downlinks") !=
        std::string::npos);
  for (const char* name : {"analyze", "simulate", "validate-gamma", "reproduce",
                           "sensitivity"})
    CHECK(r.output.find(name) != std::string::npos);
  CHECK(r.output.find("gamma_db,lower,upper,heuristic,theorem,order_used") !=
        std::string::npos);
  CHECK(r.output.find("SATCOV_THREADS") != std::string::npos);
  CHECK(r.output.find("Exit: 0 ok, 2 config, 3 numeric") != std::string::npos);
}

TEST_CASE("analyze writes the bound grid and prints the path") {
  TempDir tmp;
  const RunResult r =
      run_cli("analyze --config " + scenario("scenario1.ini") + " --out " + tmp.str());
  CHECK(r.exit_code == 0);
  const std::string expect = (tmp.path / "analyze.csv").string();
  CHECK(r.output.find(expect) != std::string::npos);
  const auto lines = split_lines(slurp(expect));
  REQUIRE(lines.size() == 22);  // header + 21 thresholds (-10..10 dB)
  CHECK(lines[0] == "gamma_db,lower,upper,heuristic,theorem,order_used");
}

TEST_CASE("simulate honors overrides and dumps raw trials") {
  TempDir tmp;
  const RunResult r = run_cli("simulate --config " + scenario("scenario1.ini") +
                              " --mode nearest --trials 48 --seed 5 --dump --out " +
                              tmp.str());
  CHECK(r.exit_code == 0);
  const auto sim = split_lines(slurp((tmp.path / "simulate_nearest.csv").string()));
  REQUIRE(sim.size() == 22);
  CHECK(sim[0] == "gamma_db,estimate,ci95,n_trials,mode");
  CHECK(sim[1].find(",48,nearest") != std::string::npos);
  const auto dump = split_lines(slurp((tmp.path / "samples.csv").string()));
  REQUIRE(dump.size() == 49);
  CHECK(dump[0] == "trial,d_power,i_power,sir");
}

TEST_CASE("worker count never changes the output bytes") {
  TempDir tmp;
  const std::string base = "simulate --config " + scenario("scenario1.ini") +
                           " --trials 64 --out ";
  const RunResult r1 = run_cli(base + tmp.sub("t1"), "SATCOV_THREADS=1");
  const RunResult r4 = run_cli(base + tmp.sub("t4"), "SATCOV_THREADS=4");
  CHECK(r1.exit_code == 0);
  CHECK(r4.exit_code == 0);
  CHECK(slurp(tmp.sub("t1") + "/simulate_cluster.csv") ==
        slurp(tmp.sub("t4") + "/simulate_cluster.csv"));
}

TEST_CASE("sensitivity writes closed-form derivative table") {
  TempDir tmp;
  const RunResult r = run_cli("sensitivity --config " + scenario("scenario1.ini") +
                              " --out " + tmp.str());
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(slurp((tmp.path / "sensitivity.csv").string()));
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "kind,region,value,at_boundary");
}

TEST_CASE("config problems exit 2") {
  TempDir tmp;
  SUBCASE("missing scenario file") {
    const RunResult r = run_cli("analyze --config " + tmp.sub("absent.ini"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("config error: cannot open scenario file:") != std::string::npos);
  }
  SUBCASE("missing required --config") {
    const RunResult r = run_cli("analyze");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("unknown flag") {
    const RunResult r =
        run_cli("analyze --config " + scenario("scenario1.ini") + " --frobnicate");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("theorem outside 1..2 rejected at parse") {
    const RunResult r =
        run_cli("analyze --config " + scenario("scenario1.ini") + " --theorem 3");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("zero trials") {
    const RunResult r = run_cli("simulate --config " + scenario("scenario1.ini") +
                                " --trials 0 --out " + tmp.str());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("trials must be >= 1") != std::string::npos);
  }
  SUBCASE("unknown figure id") {
    const RunResult r = run_cli("reproduce fig1 --config " + scenario("scenario1.ini") +
                                " --out " + tmp.str());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("unknown figure id 'fig1' (expected fig2..fig9 or table1)") !=
          std::string::npos);
  }
  SUBCASE("malformed scenario text") {
    const std::string bad = tmp.sub("bad.ini");
    {
      std::FILE* f = std::fopen(bad.c_str(), "w");
      REQUIRE(f != nullptr);
      std::fputs("alpha = 3\nwhatever = 1\n", f);
      std::fclose(f);
    }
    const RunResult r = run_cli("analyze --config " + bad);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 2: unknown key 'whatever'") != std::string::npos);
  }
}

TEST_CASE("derivative order cap exits 3 and names the alternative") {
  TempDir tmp;
  const RunResult r = run_cli("analyze --config " + scenario("scenario2.ini") +
                              " --theorem 1 --out " + tmp.str());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("numeric error:") != std::string::npos);
  CHECK(r.output.find("use theorem 2 in this regime") != std::string::npos);
}
