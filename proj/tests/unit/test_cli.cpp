// Copyright 2026 The ricmig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "json.hpp"
#include "ricmig/io.hpp"

namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ricmig_cli_") + info->name() + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(RICMIG_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, PlanOnLowLoadFixture) {
  const CliRun r = run("plan --scenario " + ts::fixture("low_load.json") + " --strategy sm-mr --out " +
                    path("o"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("status: optimal"), std::string::npos);
  const auto report = nlohmann::json::parse(slurp(path("o/report.json")));
  EXPECT_EQ(report["status"], "optimal");
  EXPECT_EQ(report["mip_gap"], 0.0);
  EXPECT_FALSE(report.contains("runtime_s"));
  const auto plan = nlohmann::json::parse(slurp(path("o/plan.json")));
  EXPECT_EQ(plan["activation_ratio"], 0.25);
  EXPECT_EQ(plan["mu"].size(), 4U);
}

TEST_F(Cli, PlanThenValidateRoundTrip) {
  ASSERT_EQ(run("plan --scenario " + ts::fixture("low_load.json") + " --out " + path("o")).code, 0);
  const CliRun v = run("validate --scenario " + ts::fixture("low_load.json") + " --plan " +
                    path("o/plan.json"));
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  EXPECT_EQ(v.out, "valid\n");
}

TEST_F(Cli, ValidateNamesViolations) {
  ASSERT_EQ(run("plan --scenario " + ts::fixture("low_load.json") + " --out " + path("o")).code, 0);
  auto plan = nlohmann::json::parse(slurp(path("o/plan.json")));
  plan["mu"][0] = false;
  std::ofstream(path("bad.json")) << plan.dump();
  const CliRun v = run("validate --scenario " + ts::fixture("low_load.json") + " --plan " + path("bad.json"));
  EXPECT_EQ(v.code, 3);
  EXPECT_NE(v.out.find("(16)"), std::string::npos) << v.out;
  EXPECT_NE(v.out.find("(19)"), std::string::npos) << v.out;
}

TEST_F(Cli, ValidateDimensionMismatch) {
  std::ofstream(path("small.json")) << R"({"mu": [true], "x": [[[0, 0], [0, 0]]]})";
  EXPECT_EQ(run("validate --scenario " + ts::fixture("low_load.json") + " --plan " + path("small.json")).code,
            1);
}

TEST_F(Cli, PlanErrors) {
  EXPECT_EQ(run("plan --scenario /nonexistent.json").code, 1);
  EXPECT_EQ(run("plan").code, 1);
  EXPECT_EQ(run("plan --scenario " + ts::fixture("low_load.json") + " --strategy warp").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
}

TEST_F(Cli, PlanInfeasibleExitsTwo) {
  std::ofstream(path("sdl.json")) << R"({
    "classes": [{"id": "A", "msg_size_bytes": 100, "msg_period_s": 1}],
    "servers": [{"id": "s0", "cpu_cap": 128, "mem_cap": 125, "disk_cap": 1000}],
    "initial_counts": {"A": [61]},
    "params": {"strategy": "sdl", "max_defrag_downtime_s": 1}})";
  const CliRun r = run("plan --scenario " + path("sdl.json") + " --out " + path("o"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("infeasible"), std::string::npos);
  EXPECT_NE(r.err.find("(21)"), std::string::npos);
}

TEST_F(Cli, ForcedEarlyStopOnLargeFixture) {
  const CliRun r = run("plan --scenario " + ts::fixture("large_120.json") + " --time-limit 0.001 --out " +
                    path("o"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(slurp(path("o/report.json")));
  EXPECT_EQ(report["status"], "time_limit");
  EXPECT_GT(report["mip_gap"].get<double>(), 0.0);
}

TEST_F(Cli, FeasibilityCsv) {
  const CliRun r = run("feasibility --spec " + ts::fixture("sdl_feasibility.json") + " --out " + path("o"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("max_feasible=60"), std::string::npos) << r.out;
  const std::string csv = slurp(path("o/feasibility.csv"));
  EXPECT_EQ(csv.rfind(ricmig::kSweepCsvHeader, 0), 0U);
  EXPECT_NE(csv.find("sdl,A,1,1,60,true"), std::string::npos);
  EXPECT_NE(csv.find("sdl,A,1,1,61,false"), std::string::npos);
}

TEST_F(Cli, SweepIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(run("sweep --spec " + ts::fixture("energy_sweep.json") + " --out " + path("a")).code, 0);
  ASSERT_EQ(run("sweep --spec " + ts::fixture("energy_sweep.json") + " --out " + path("b")).code, 0);
  const std::string a = slurp(path("a/sweep.csv"));
  EXPECT_EQ(a, slurp(path("b/sweep.csv")));
  std::istringstream lines(a);
  std::string line;
  std::getline(lines, line);
  double prev = 2.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    ASSERT_GE(cells.size(), 7U);
    const double gain = std::stod(cells[6]);
    EXPECT_LE(gain, prev);
    prev = gain;
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST_F(Cli, EmptySweepIsHeaderOnly) {
  ASSERT_EQ(run("sweep --spec " + ts::fixture("empty_sweep.json") + " --out " + path("o")).code, 0);
  EXPECT_EQ(slurp(path("o/sweep.csv")), std::string(ricmig::kSweepCsvHeader) + "\n");
}

TEST_F(Cli, SweepParseError) {
  std::ofstream(path("bad.json")) << "{\"counts\": ";
  EXPECT_EQ(run("sweep --spec " + path("bad.json")).code, 1);
}

TEST_F(Cli, Fit) {
  const CliRun r = run("fit --measurements " + ts::fixture("measurements_sm_mr.csv") + " --label delta_d");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["fit"]["delta"], 10.55);
  EXPECT_EQ(doc["fit"]["b"], 0.0);
  EXPECT_EQ(doc["fit"]["label"], "delta_d");

  const CliRun c = run("fit --measurements " + ts::fixture("measurements_constant.csv") + " --label c");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["fit"]["delta"], 0.0);

  EXPECT_EQ(run("fit --measurements " + ts::fixture("measurements_single.csv") + " --label s").code, 2);
  EXPECT_EQ(run("fit --measurements /nonexistent.csv --label s").code, 1);
}

TEST_F(Cli, GenScenarioIsReproducible) {
  ASSERT_EQ(run("gen-scenario --seed 11 --xapps 20 --deploys 3 --out " + path("a.json")).code, 0);
  ASSERT_EQ(run("gen-scenario --seed 11 --xapps 20 --deploys 3 --out " + path("b.json")).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_NO_THROW(ricmig::read_scenario(path("a.json")));
}

TEST_F(Cli, CalibrationOverride) {
  std::ofstream(path("cal.json")) << R"({"sm_overhead": [{"strategy": "sm-mr", "metric": "E", "b": 20.0}]})";
  const CliRun r = run("calibration --calibration " + path("cal.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("20.0"), std::string::npos);
  std::ofstream(path("neg.json")) << R"({"sigma": [{"class": "A", "rho_mb": 1, "nu_s": 1, "sigma_ms": -1}]})";
  EXPECT_EQ(run("calibration --calibration " + path("neg.json")).code, 1);
}
