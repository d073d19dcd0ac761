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

#include <random>

#include "helpers.hpp"
#include "oracle.hpp"
#include "ricmig/errors.hpp"
#include "ricmig/io.hpp"
#include "ricmig/solvers.hpp"

using namespace ricmig;
namespace ts = testing_support;

namespace {

const Calibration& cal() { return Calibration::defaults(); }

SalProblem problem_of(const ClusterState& st, Strategy strategy = Strategy::kSmMr) {
  return build_problem(st, ts::params(strategy), cal());
}

SalProblem large_problem() {
  GeneratorOptions g;
  g.servers = 4;
  g.optional_servers = 3;
  g.xapps = 120;
  const ScenarioFile sc = generate_scenario(7, g);
  return build_problem(sc.state, sc.params, cal());
}

}  // namespace

TEST(Bruteforce, ShutsDownTheOptionalServer) {
  const SalProblem p = problem_of(ts::class_a_state({0, 3}));
  const SolveResult r = solve_bruteforce(p);
  ASSERT_EQ(r.report.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.plan.mu, (std::vector<bool>{true, false}));
  EXPECT_EQ(r.plan.x(0, 1, 0), 3);
  const double d = oracle::duration_mr(3, 1);
  const double want = 3600.0 * (120 + 3 * 3.43) +
                      oracle::server_energy_sm(oracle::kBEMr, d, 3.43, 3, 0, false, 3600.0);
  EXPECT_TRUE(oracle::close(r.report.objective, want));
  EXPECT_EQ(r.report.mip_gap, 0.0);
}

TEST(Bruteforce, SingleIdleServer) {
  ClusterState st = ClusterState::make({ts::class_named("A")}, {ts::server("s0", false)});
  const SolveResult r = solve_bruteforce(problem_of(st));
  ASSERT_EQ(r.report.status, SolveStatus::kOptimal);
  EXPECT_TRUE(oracle::close(r.report.objective, 432000.0));
  EXPECT_EQ(r.report.nodes_explored, 1);
}

TEST(Bruteforce, CapacityInfeasible) {
  ClusterState st = ClusterState::make({ts::class_named("B")}, {ts::server("tiny", false, 4.0)});
  st.initial_counts[0] = {3};
  const SolveResult r = solve_bruteforce(problem_of(st));
  EXPECT_EQ(r.report.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(r.report.has_plan());
  EXPECT_FALSE(r.report.infeasibility_hint.empty());
}

TEST(Bruteforce, RefusesOversizedSpaces) {
  const SalProblem p = large_problem();
  const double space = bruteforce_space(p);
  EXPECT_GT(space, 1e7);
  try {
    solve_bruteforce(p);
    FAIL() << "expected SearchSpaceError";
  } catch (const SearchSpaceError& e) {
    EXPECT_EQ(e.estimate(), space);
  }
}

TEST(Bruteforce, SpaceEstimate) {
  // 2 activation vectors x C(3+1,1) compositions of the row on server 1.
  EXPECT_EQ(bruteforce_space(problem_of(ts::class_a_state({0, 3}))), 2.0 * 4.0);
}

TEST(Bnb, MatchesBruteforceOnSmallInstances) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 30; ++i) {
    const ClusterState st = ts::random_small_state(rng);
    const Strategy strategy = std::array{Strategy::kSdl, Strategy::kSmMr, Strategy::kSmMd}[i % 3];
    const SalProblem p = problem_of(st, strategy);
    const SolveResult bf = solve_bruteforce(p);
    const SolveResult bb = solve_bnb(p);
    ASSERT_EQ(bf.report.status == SolveStatus::kInfeasible,
              bb.report.status == SolveStatus::kInfeasible)
        << "instance " << i;
    if (!bf.report.has_plan()) continue;
    EXPECT_EQ(bb.report.status, SolveStatus::kOptimal) << "instance " << i;
    EXPECT_TRUE(oracle::close(bb.report.objective, bf.report.objective, 1e-6)) << "instance " << i;
    EXPECT_TRUE(validate_plan(p, bb.plan).valid) << "instance " << i;
    EXPECT_LE(bb.report.lower_bound, bb.report.objective + 1e-6 * bb.report.objective);
  }
}

TEST(Bnb, SdlOverThresholdIsInfeasible) {
  const SalProblem p = problem_of(ts::class_a_state({31, 30}), Strategy::kSdl);
  const SolveResult r = solve_bnb(p);
  EXPECT_EQ(r.report.status, SolveStatus::kInfeasible);
  EXPECT_NE(std::find(r.report.infeasibility_hint.begin(), r.report.infeasibility_hint.end(),
                      label(Constraint::kDefragDeadline)),
            r.report.infeasibility_hint.end());
}

TEST(Bnb, ForcedEarlyStopKeepsIncumbentAndBound) {
  const SalProblem p = large_problem();
  SolveLimits lim;
  lim.time_limit_s = 0.001;
  const SolveResult r = solve_bnb(p, lim);
  EXPECT_EQ(r.report.status, SolveStatus::kTimeLimit);
  ASSERT_TRUE(r.report.has_plan());
  EXPECT_TRUE(validate_plan(p, r.plan).valid);
  EXPECT_TRUE(std::isfinite(r.report.lower_bound));
  EXPECT_LE(r.report.lower_bound, r.report.objective);
  EXPECT_GT(r.report.mip_gap, 0.0);
}

TEST(Bnb, GapTargetStopsEarly) {
  const SalProblem p = large_problem();
  SolveLimits lim;
  lim.time_limit_s = 60.0;
  lim.gap_target = 0.05;
  const SolveResult r = solve_bnb(p, lim);
  ASSERT_TRUE(r.report.has_plan());
  EXPECT_TRUE(r.report.status == SolveStatus::kGapReached || r.report.status == SolveStatus::kOptimal);
  EXPECT_LE(r.report.mip_gap, 0.05);
}

TEST(Bnb, WarmStartIsNeverWorse) {
  const SalProblem p = problem_of(ts::class_a_state({3, 3, 2, 2}));
  const SolveResult greedy = solve_greedy(p);
  const SolveResult r = solve_bnb(p, {}, &greedy.plan);
  ASSERT_TRUE(r.report.has_plan());
  EXPECT_LE(r.report.objective, greedy.report.objective * (1 + 1e-12));
}

TEST(Bnb, TraceIsMonotone) {
  const SalProblem p = large_problem();
  SolveLimits lim;
  lim.time_limit_s = 1.0;
  const SolveResult r = solve_bnb(p, lim);
  ASSERT_FALSE(r.report.trace.empty());
  for (std::size_t i = 1; i < r.report.trace.size(); ++i) {
    EXPECT_LE(r.report.trace[i].incumbent, r.report.trace[i - 1].incumbent);
    EXPECT_GE(r.report.trace[i].lower_bound, r.report.trace[i - 1].lower_bound);
  }
}

TEST(Greedy, LowLoadUsesOneServer) {
  const SalProblem p = problem_of(ts::class_a_state({3, 3, 2, 2}));
  const SolveResult r = solve_greedy(p);
  ASSERT_TRUE(r.report.has_plan());
  EXPECT_EQ(r.plan.activation_ratio, 0.25);
  EXPECT_TRUE(validate_plan(p, r.plan).valid);
  EXPECT_TRUE(std::isinf(r.report.lower_bound));
}

TEST(Greedy, DemandBeyondCapacity) {
  ClusterState st = ClusterState::make({ts::class_named("B")},
                                       {ts::server("a", false, 4.0), ts::server("b", true, 4.0)});
  st.initial_counts[0] = {1, 1};
  st.pending_deploys[0] = 4;
  const SolveResult r = solve_greedy(problem_of(st));
  EXPECT_EQ(r.report.status, SolveStatus::kInfeasible);
}

TEST(Greedy, NeverBeatsTheOptimum) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const SalProblem p = problem_of(ts::random_small_state(rng), Strategy::kSmMd);
    const SolveResult g = solve_greedy(p);
    const SolveResult bf = solve_bruteforce(p);
    if (!g.report.has_plan()) continue;
    ASSERT_TRUE(bf.report.has_plan());
    EXPECT_TRUE(validate_plan(p, g.plan).valid);
    EXPECT_GE(g.report.objective, bf.report.objective * (1 - 1e-12));
  }
}

TEST(Solve, DispatchAndNames) {
  EXPECT_EQ(parse_solver("bnb"), SolverChoice::kBnb);
  EXPECT_EQ(parse_solver("bruteforce"), SolverChoice::kBruteforce);
  EXPECT_EQ(parse_solver("greedy"), SolverChoice::kGreedy);
  EXPECT_FALSE(parse_solver("cplex"));
  const SalProblem p = problem_of(ts::class_a_state({1, 1}));
  EXPECT_EQ(solve(p, SolverChoice::kGreedy).report.solver, "greedy");
  EXPECT_EQ(solve(p, SolverChoice::kBruteforce).report.solver, "bruteforce");
  EXPECT_EQ(solve(p, SolverChoice::kBnb).report.solver, "bnb");
}

TEST(Solve, Deterministic) {
  const SalProblem p = problem_of(ts::class_a_state({3, 3, 2, 2}), Strategy::kSmMd);
  for (SolverChoice c : {SolverChoice::kBnb, SolverChoice::kBruteforce, SolverChoice::kGreedy}) {
    const SolveResult a = solve(p, c);
    const SolveResult b = solve(p, c);
    EXPECT_EQ(a.plan.x, b.plan.x);
    EXPECT_EQ(a.plan.mu, b.plan.mu);
    EXPECT_EQ(plan_to_json(p, a.plan), plan_to_json(p, b.plan));
  }
}

TEST(Solve, TieBreakIsLexicographicallySmallest) {
  // Two identical optional servers each hosting one xApp: keeping either is
  // equally good, and the smaller activation vector wins.
  ClusterState st = ts::class_a_state({0, 1, 1});
  const SalProblem p = problem_of(st);
  const SolveResult bf = solve_bruteforce(p);
  const SolveResult bb = solve_bnb(p);
  ASSERT_TRUE(bf.report.has_plan());
  EXPECT_EQ(bf.plan.mu, (std::vector<bool>{true, false, false}));
  EXPECT_TRUE(oracle::close(bb.report.objective, bf.report.objective, 1e-9));
}

TEST(InfeasibilityHint, NamesCapacity) {
  ClusterState st = ClusterState::make({ts::class_named("B")}, {ts::server("tiny", false, 4.0)});
  st.initial_counts[0] = {3};
  const auto hint = infeasibility_hint(problem_of(st));
  ASSERT_EQ(hint.size(), 1U);
  EXPECT_EQ(hint[0], label(Constraint::kCapacity));
}
