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

#include <benchmark/benchmark.h>

#include "ricmig/io.hpp"
#include "ricmig/solvers.hpp"

namespace {

using namespace ricmig;

SalProblem generated(int xapps) {
  GeneratorOptions g;
  g.servers = 4;
  g.optional_servers = 3;
  g.xapps = xapps;
  const ScenarioFile sc = generate_scenario(7, g);
  return build_problem(sc.state, sc.params, Calibration::defaults());
}

void BM_Greedy(benchmark::State& state) {
  const SalProblem p = generated(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_greedy(p));
  }
}
BENCHMARK(BM_Greedy)->Arg(10)->Arg(120);

void BM_BranchAndBound(benchmark::State& state) {
  const SalProblem p = generated(static_cast<int>(state.range(0)));
  SolveLimits lim;
  lim.time_limit_s = 2.0;
  lim.gap_target = 0.05;
  for (auto _ : state) {
    const SolveResult r = solve_bnb(p, lim);
    state.counters["gap"] = r.report.mip_gap;
    state.counters["nodes"] = static_cast<double>(r.report.nodes_explored);
  }
}
BENCHMARK(BM_BranchAndBound)->Arg(10)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
