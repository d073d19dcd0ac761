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

#ifndef RICMIG_IO_HPP
#define RICMIG_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ricmig/orchestrator.hpp"
#include "ricmig/problem.hpp"
#include "ricmig/solvers.hpp"
#include "ricmig/types.hpp"

// File formats. Every reader throws ParseError with the offending field path;
// every writer is deterministic (fixed key order, numbers at 6 significant
// digits) so identical inputs give byte-identical files.

namespace ricmig {

struct ScenarioFile {
  /// Pending deploys and undeploys are carried in the state.
  ClusterState state;
  ScenarioParams params;
  std::optional<SolveLimits> limits;
};

ScenarioFile parse_scenario(const std::string& text);
ScenarioFile read_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioFile& scenario);

struct GeneratorOptions {
  int servers = 4;
  int optional_servers = 3;
  int xapps = 10;
  int deploys = 0;
  Strategy strategy = Strategy::kSmMr;
};

/// Random scenario over the reference classes, reproducible from the seed.
ScenarioFile generate_scenario(std::uint64_t seed, const GeneratorOptions& options = {});

struct ReportExtras {
  std::optional<double> baseline_energy_j;
  std::optional<double> energy_gain;
  /// Include runtime_s and the trace's elapsed times.
  bool timing = false;
};

std::string plan_to_json(const SalProblem& problem, const MigrationPlan& plan);
std::string report_to_json(const SolveReport& report, const ReportExtras& extras = {});

struct PlanFile {
  FlowTensor x;
  std::vector<bool> mu;
};

/// Reads x and mu back. Dimensions are checked by the caller against the problem.
PlanFile parse_plan(const std::string& text);
PlanFile read_plan(const std::string& path);

SweepSpec parse_sweep_spec(const std::string& text);
SweepSpec read_sweep_spec(const std::string& path);

inline constexpr const char* kSweepCsvHeader =
    "strategy,class,rho_mb,nu_s,n_total,feasible,energy_gain,activation_ratio,mip_gap,runtime_s";

/// Header plus one line per row. runtime_s stays empty unless `timing`.
std::string sweep_csv(const std::vector<SweepRow>& rows, bool timing = false);

/// %.6g
std::string format_number(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ricmig

#endif  // RICMIG_IO_HPP
