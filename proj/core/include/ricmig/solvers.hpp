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

#ifndef RICMIG_SOLVERS_HPP
#define RICMIG_SOLVERS_HPP

#include <optional>
#include <string_view>

#include "ricmig/problem.hpp"

namespace ricmig {

struct SolveLimits {
  double time_limit_s = 300.0;
  /// Stop once (incumbent - bound) / incumbent falls to this value.
  double gap_target = 0.0;
  /// Largest plan space solve_bruteforce will enumerate.
  double bruteforce_cap = 1.0e7;
};

enum class SolverChoice { kBnb, kBruteforce, kGreedy };

std::string_view to_string(SolverChoice c);
std::optional<SolverChoice> parse_solver(std::string_view text);

/// Number of (activation vector, flow tensor) pairs exhaustive search visits
/// without pruning: 2^#optional times the compositions of every row of n0
/// over the physical destinations.
double bruteforce_space(const SalProblem& problem);

/// Exhaustive enumeration. Returns the optimum with the lexicographically
/// smallest (mu, x) among ties. Throws SearchSpaceError above the cap.
SolveResult solve_bruteforce(const SalProblem& problem, const SolveLimits& limits = {});

/// Branch-and-bound over the per-server aggregate flows: activation flags are
/// branched first, then integer flows, with bounds from a linear relaxation in
/// which the bilinear window-times-load and window-times-activation products
/// are replaced by McCormick envelopes. `warm_start`, when valid, seeds the
/// incumbent.
SolveResult solve_bnb(const SalProblem& problem, const SolveLimits& limits = {},
                      const MigrationPlan* warm_start = nullptr);

/// Best-fit-decreasing consolidation onto as few servers as the constraints
/// allow. Reports no lower bound.
SolveResult solve_greedy(const SalProblem& problem);

SolveResult solve(const SalProblem& problem, SolverChoice choice, const SolveLimits& limits = {});

/// Constraint labels that block the most permissive plan (all servers on,
/// nothing migrated, staged xApps spread evenly).
std::vector<std::string> infeasibility_hint(const SalProblem& problem);

}  // namespace ricmig

#endif  // RICMIG_SOLVERS_HPP
