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

#ifndef RICMIG_PROBLEM_HPP
#define RICMIG_PROBLEM_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ricmig/calibration.hpp"
#include "ricmig/model.hpp"
#include "ricmig/types.hpp"

namespace ricmig {

/// Joint server-activation and lossless-migration problem of one slot.
///
/// Decision variables are x[k][s][s'] over the physical servers plus a
/// staging server (index num_servers()) that holds the pending deployments,
/// and the activation flags mu[s] of the physical servers.
struct SalProblem {
  ClusterState state;  // undeployments already applied
  ScenarioParams params;
  Calibration cal;
  int big_m = 1;  // total xApps + 1
  bool downtime_constraint = false;  // stateful strategies
  bool sdl_constraints = false;  // SDL strategy

  std::size_t num_classes() const { return state.num_classes(); }
  std::size_t num_servers() const { return state.num_servers(); }
  std::size_t num_flow_vars() const {
    return num_classes() * (num_servers() + 1) * (num_servers() + 1);
  }
  SlotModel model() const;
};

/// Builds the problem for a state whose deployments are staged and whose
/// undeployments were applied. Throws BuildError / CalibrationLookupError.
SalProblem build_problem(const ClusterState& state, const ScenarioParams& params,
                         const Calibration& cal);

struct MigrationPlan {
  FlowTensor x;
  std::vector<bool> mu;

  // Derived by derive_plan().
  std::vector<ServerKpis> kpis;
  std::vector<ResourceUsage> resources;
  std::vector<ServerEnergy> energy;
  double total_energy_j = 0.0;
  double activation_ratio = 0.0;

  /// Hosted xApps per class and server after the slot.
  CountMatrix final_counts() const;
};

/// The constraints of the problem, numbered as in the formulation.
enum class Constraint {
  kConservation = 12,
  kNoInflowToStaging = 13,
  kStagingDrained = 14,
  kSourceWasActive = 15,
  kDestinationActive = 16,
  kActiveHostsSomething = 17,
  kCapacity = 18,
  kMandatoryOn = 19,
  kDowntime = 20,
  kDefragDeadline = 21,
  kActiveTime = 22,
  kNonNegative = 100,
  kSlotWindow = 101,
};

/// "(12)" ... "(22)", "(x>=0)", "(window)".
std::string label(Constraint c);

struct Violation {
  Constraint constraint;
  std::string where;
  std::string detail;
};

struct Verdict {
  bool valid = true;
  std::vector<Violation> violations;

  bool names(Constraint c) const;
};

/// Checks every active constraint. Throws std::invalid_argument on a
/// dimension mismatch; violations are returned, never thrown.
Verdict validate_plan(const SalProblem& problem, const FlowTensor& x, const std::vector<bool>& mu);
Verdict validate_plan(const SalProblem& problem, const MigrationPlan& plan);
/// Same verdict as validate_plan(...).valid without building messages.
bool plan_is_valid(const SalProblem& problem, const FlowTensor& x, const std::vector<bool>& mu);

/// Total cluster energy of a plan in joules.
double objective_eval(const SalProblem& problem, const MigrationPlan& plan);
double objective_eval(const SalProblem& problem, const FlowTensor& x, const std::vector<bool>& mu);

/// Fills the derived KPI, resource and energy fields.
void derive_plan(const SalProblem& problem, MigrationPlan& plan);

/// Per-class, per-server aggregates of a plan: how many xApps leave each
/// server, arrive from other physical servers, and are instantiated there.
struct AggregateFlows {
  CountMatrix outgoing;
  CountMatrix incoming;
  CountMatrix fresh;
};

AggregateFlows aggregate(const FlowTensor& x);

/// Lexicographically smallest flow tensor with the given aggregates, or
/// nullopt if no source-destination pairing avoids self-migration.
std::optional<FlowTensor> realize_flows(const SalProblem& problem, const AggregateFlows& flows);

enum class SolveStatus { kOptimal, kGapReached, kTimeLimit, kInfeasible };

std::string_view to_string(SolveStatus s);

struct BoundEvent {
  long node = 0;
  double elapsed_s = 0.0;
  double incumbent = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
};

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = std::numeric_limits<double>::infinity();
  /// -inf when no bound is certified (greedy).
  double lower_bound = -std::numeric_limits<double>::infinity();
  double mip_gap = std::numeric_limits<double>::infinity();
  double runtime_s = 0.0;
  long nodes_explored = 0;
  std::string solver;
  /// For infeasible results: constraints that block the simplest plans.
  std::vector<std::string> infeasibility_hint;
  /// Incumbent and global bound after every improvement (branch-and-bound only).
  std::vector<BoundEvent> trace;

  bool has_plan() const { return status != SolveStatus::kInfeasible && objective < kNoPlan; }
  static constexpr double kNoPlan = std::numeric_limits<double>::infinity();
};

/// (objective - bound) / max(objective, eps).
double relative_gap(double objective, double lower_bound);

struct SolveResult {
  MigrationPlan plan;
  SolveReport report;
};

}  // namespace ricmig

#endif  // RICMIG_PROBLEM_HPP
