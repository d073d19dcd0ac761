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

#ifndef RICMIG_TOOLS_COMMANDS_HPP
#define RICMIG_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace ricmig::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kInvalidPlan = 3 };

struct CommonOptions {
  std::string calibration;
  std::optional<std::string> strategy;
  double time_limit_s = 300.0;
  double gap = 0.0;
  std::string solver = "bnb";
  std::string out = ".";
  bool timing = false;
};

int cmd_plan(const std::string& scenario, const CommonOptions& opt);
int cmd_validate(const std::string& scenario, const std::string& plan, const CommonOptions& opt);
int cmd_feasibility(const std::string& spec, const CommonOptions& opt);
int cmd_sweep(const std::string& spec, const CommonOptions& opt);
int cmd_fit(const std::string& measurements, const std::string& label);
int cmd_gen_scenario(std::uint64_t seed, int servers, int optional, int xapps, int deploys,
                     const CommonOptions& opt, const std::string& out_file);
int cmd_calibration(const CommonOptions& opt);

}  // namespace ricmig::cli

#endif  // RICMIG_TOOLS_COMMANDS_HPP
