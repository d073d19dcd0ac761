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

#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, ricmig::cli::CommonOptions& opt, bool solving) {
  cmd->add_option("--calibration", opt.calibration, "Calibration JSON merged over the defaults");
  if (!solving) return;
  cmd->add_option("--time-limit", opt.time_limit_s, "Solver time limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gap", opt.gap, "Stop at this relative MIP gap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--solver", opt.solver, "bnb, bruteforce or greedy")
      ->check(CLI::IsMember({"bnb", "bruteforce", "greedy"}));
  cmd->add_option("--out", opt.out, "Output directory");
  cmd->add_flag("--timing", opt.timing, "Record wall-clock times in the artifacts");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ricmig::cli;
  CLI::App app{"ricmig: energy-aware xApp migration planner"};
  app.require_subcommand(1);
  CommonOptions opt;
  std::string scenario, plan, spec, measurements, label, out_file;
  std::string strategy;
  std::uint64_t seed = 1;
  int servers = 4, optional = 3, xapps = 10, deploys = 0;

  auto* plan_cmd = app.add_subcommand("plan", "Solve one slot and write plan.json and report.json");
  plan_cmd->add_option("--scenario", scenario, "Scenario JSON")->required();
  plan_cmd->add_option("--strategy", strategy, "Override the scenario strategy");
  add_common(plan_cmd, opt, true);

  auto* validate_cmd = app.add_subcommand("validate", "Check a plan against a scenario");
  validate_cmd->add_option("--scenario", scenario, "Scenario JSON")->required();
  validate_cmd->add_option("--plan", plan, "Plan JSON")->required();
  validate_cmd->add_option("--strategy", strategy, "Override the scenario strategy");
  add_common(validate_cmd, opt, false);

  auto* feas_cmd = app.add_subcommand("feasibility", "Largest feasible xApp count per configuration");
  feas_cmd->add_option("--spec", spec, "Sweep spec JSON")->required();
  add_common(feas_cmd, opt, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "Energy gain and activation ratio per configuration");
  sweep_cmd->add_option("--spec", spec, "Sweep spec JSON")->required();
  add_common(sweep_cmd, opt, true);

  auto* fit_cmd = app.add_subcommand("fit", "Fit slope and intercept to a measurement CSV");
  fit_cmd->add_option("--measurements", measurements, "CSV with header predictor,response")->required();
  fit_cmd->add_option("--label", label, "Name of the fitted quantity")->required();

  auto* gen_cmd = app.add_subcommand("gen-scenario", "Write a random scenario");
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("--servers", servers, "Physical servers")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--optional", optional, "Optional servers")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--xapps", xapps, "Hosted xApps")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--deploys", deploys, "Staged xApps")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--strategy", strategy, "Scenario strategy");
  gen_cmd->add_option("--out", out_file, "Output file (default: standard output)");

  auto* cal_cmd = app.add_subcommand("calibration", "Print the effective calibration");
  add_common(cal_cmd, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (!strategy.empty()) opt.strategy = strategy;

  if (*plan_cmd) return cmd_plan(scenario, opt);
  if (*validate_cmd) return cmd_validate(scenario, plan, opt);
  if (*feas_cmd) return cmd_feasibility(spec, opt);
  if (*sweep_cmd) return cmd_sweep(spec, opt);
  if (*fit_cmd) return cmd_fit(measurements, label);
  if (*gen_cmd) return cmd_gen_scenario(seed, servers, optional, xapps, deploys, opt, out_file);
  if (*cal_cmd) return cmd_calibration(opt);
  return kUsage;
}
