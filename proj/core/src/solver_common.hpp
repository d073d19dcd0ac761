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

#ifndef RICMIG_SRC_SOLVER_COMMON_HPP
#define RICMIG_SRC_SOLVER_COMMON_HPP

#include <chrono>
#include <string>
#include <vector>

#include "ricmig/problem.hpp"
#include "ricmig/solvers.hpp"

namespace ricmig::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// True when the SDL maintenance constraints, which no plan can change, fail.
bool sdl_blocked(const SalProblem& problem);

SolveResult infeasible_result(const SalProblem& problem, std::string solver, double runtime_s);

/// Packs a plan and fills its derived fields.
MigrationPlan make_plan(const SalProblem& problem, FlowTensor x, std::vector<bool> mu);

}  // namespace ricmig::detail

#endif  // RICMIG_SRC_SOLVER_COMMON_HPP
