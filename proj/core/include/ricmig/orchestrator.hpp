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

#ifndef RICMIG_ORCHESTRATOR_HPP
#define RICMIG_ORCHESTRATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "ricmig/calibration.hpp"
#include "ricmig/problem.hpp"
#include "ricmig/solvers.hpp"
#include "ricmig/types.hpp"

namespace ricmig {

/// Which servers lose xApps when a class is scaled down.
enum class UndeployPolicy {
  /// Optional servers before mandatory ones, most class-k xApps first, ties by index.
  kDrainOptionalFirst,
  /// Most class-k xApps first regardless of the optional flag, ties by index.
  kMostLoadedFirst,
};

/// Removes n_minus[k] xApps of each class and clears pending_undeploys.
/// Throws StateError when a class has fewer xApps than requested.
ClusterState apply_undeployments(const ClusterState& state, const std::vector<int>& n_minus,
                                 UndeployPolicy policy = UndeployPolicy::kDrainOptionalFirst);

/// Sets the staged deployments (overwrites, never accumulates).
ClusterState stage_deployments(const ClusterState& state, const std::vector<int>& n_plus);

/// All servers on, every xApp (hosted and staged) spread to minimize the
/// largest CPU utilization, one at a time, ties to the lowest index. xApps
/// already on a server stay there up to its share. nullopt when the balanced
/// placement breaks a capacity, downtime or SDL constraint.
std::optional<MigrationPlan> baseline_plan(const SalProblem& problem);

struct SlotResult {
  MigrationPlan plan;
  SolveReport report;
  bool feasible = false;
  std::optional<MigrationPlan> baseline;
  double baseline_energy_j = 0.0;
  /// 1 - plan / baseline; 0 when either side is missing.
  double energy_gain = 0.0;
  double activation_ratio = 0.0;
  /// State for the next slot: the plan's placement and activation, nothing
  /// pending. The input state when the slot is infeasible.
  ClusterState next_state;
};

struct SlotOptions {
  SolverChoice solver = SolverChoice::kBnb;
  SolveLimits limits;
  UndeployPolicy policy = UndeployPolicy::kDrainOptionalFirst;
};

/// Applies the state's pending undeployments, keeps its staged deployments,
/// solves and compares against the baseline.
SlotResult run_timeslot(const ClusterState& state, const ScenarioParams& params,
                        const Calibration& cal, const SlotOptions& options = {});

struct SweepSpec {
  std::vector<XAppClass> classes = reference_classes();
  std::vector<ServerSpec> servers;
  std::vector<std::string> dominant_classes;
  double dominant_share = 0.75;
  std::vector<int> counts;
  std::vector<double> rho_mb;
  std::vector<double> nu_s;
  std::vector<Strategy> strategies;
  /// Slot length, downtime limits; strategy, rho and nu are overwritten per point.
  ScenarioParams params;

  /// Throws std::invalid_argument naming the first bad field.
  void check() const;
};

/// Per-class counts for `total` xApps: the dominant class gets the share,
/// the rest is split equally, rounded by largest remainder (ties to the lower index).
std::vector<int> class_mix(std::size_t num_classes, std::size_t dominant, double share, int total);

/// Cluster with `counts` spread by the baseline rule over all servers, nothing pending.
ClusterState balanced_state(const std::vector<XAppClass>& classes,
                            const std::vector<ServerSpec>& servers, const std::vector<int>& counts,
                            const ScenarioParams& params, const Calibration& cal);

struct SweepRow {
  Strategy strategy = Strategy::kSdl;
  std::string dominant_class;
  double rho_mb = 0.0;
  double nu_s = 0.0;
  int n_total = 0;
  bool feasible = false;
  std::optional<double> energy_gain;
  std::optional<double> activation_ratio;
  std::optional<double> mip_gap;
  double runtime_s = 0.0;
};

struct FeasibilitySummary {
  Strategy strategy = Strategy::kSdl;
  std::string dominant_class;
  double rho_mb = 0.0;
  double nu_s = 0.0;
  /// Largest count in the range with a feasible plan; 0 when none.
  int max_feasible = 0;
  /// Stateful strategies: most migrations one server can send within the downtime budget.
  std::optional<int> sm_outgoing_cap;
};

struct FeasibilitySweep {
  std::vector<SweepRow> rows;
  std::vector<FeasibilitySummary> summary;
};

/// floor((T_D^max - b_D) / delta_D), or nullopt for SDL.
std::optional<int> sm_outgoing_cap(Strategy strategy, const ScenarioParams& params,
                                   const Calibration& cal);

/// For each (strategy, class, rho, nu, N): does any plan exist? Greedy first,
/// branch-and-bound when greedy finds none.
FeasibilitySweep feasibility_sweep(const SweepSpec& spec, const Calibration& cal,
                                   const SolveLimits& limits = {});

/// One solved slot per (strategy, class, rho, nu, N).
std::vector<SweepRow> energy_sweep(const SweepSpec& spec, const Calibration& cal,
                                   const SlotOptions& options = {});

}  // namespace ricmig

#endif  // RICMIG_ORCHESTRATOR_HPP
