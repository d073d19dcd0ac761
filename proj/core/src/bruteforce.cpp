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

#include <cmath>
#include <cstdio>
#include <limits>

#include "ricmig/errors.hpp"
#include "ricmig/solvers.hpp"
#include "solver_common.hpp"

namespace ricmig {

namespace {

double compositions(int total, std::size_t parts) {
  // C(total + parts - 1, parts - 1)
  if (parts == 0) return total == 0 ? 1.0 : 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i < parts; ++i) {
    c = c * static_cast<double>(total + static_cast<int>(i)) / static_cast<double>(i);
  }
  return std::round(c);
}

// Lexicographic successor among vectors with the same sum; false after the last.
bool next_composition(std::vector<int>& c) {
  const std::size_t n = c.size();
  if (n < 2) return false;
  int tail = 0;
  for (std::size_t i = n - 1; i-- > 0;) {
    tail += c[i + 1];
    if (tail > 0) {
      ++c[i];
      for (std::size_t j = i + 1; j < n; ++j) c[j] = 0;
      c[n - 1] = tail - 1;
      return true;
    }
  }
  return false;
}

struct Row {
  std::size_t k;
  std::size_t src;
  int total;
};

}  // namespace

double bruteforce_space(const SalProblem& problem) {
  const std::size_t ns = problem.num_servers();
  const auto& st = problem.state;
  double space = 1.0;
  for (const ServerSpec& s : st.servers) space *= s.optional ? 2.0 : 1.0;
  for (std::size_t k = 0; k < problem.num_classes(); ++k) {
    for (std::size_t s = 0; s < ns; ++s) space *= compositions(st.initial_counts[k][s], ns);
    space *= compositions(st.pending_deploys[k], ns);
  }
  return space;
}

SolveResult solve_bruteforce(const SalProblem& problem, const SolveLimits& limits) {
  const detail::Stopwatch clock;
  const double space = bruteforce_space(problem);
  if (space > limits.bruteforce_cap) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "search space of %.6g plans exceeds the cap of %.6g", space,
                  limits.bruteforce_cap);
    throw SearchSpaceError(buf, space);
  }
  if (detail::sdl_blocked(problem)) {
    return detail::infeasible_result(problem, "bruteforce", clock.elapsed_s());
  }

  const std::size_t nk = problem.num_classes();
  const std::size_t ns = problem.num_servers();
  const auto& st = problem.state;
  std::vector<Row> rows;
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t s = 0; s < ns; ++s) {
      if (st.initial_counts[k][s] > 0) rows.push_back(Row{k, s, st.initial_counts[k][s]});
    }
    if (st.pending_deploys[k] > 0) rows.push_back(Row{k, ns, st.pending_deploys[k]});
  }

  std::vector<std::size_t> optional;
  for (std::size_t s = 0; s < ns; ++s) {
    if (st.servers[s].optional) optional.push_back(s);
  }

  double best = std::numeric_limits<double>::infinity();
  FlowTensor best_x;
  std::vector<bool> best_mu;
  long evaluations = 0;
  bool timed_out = false;

  // Activation vectors in lexicographic order: server 0 is the most significant.
  const std::size_t combos = std::size_t{1} << optional.size();
  for (std::size_t code = 0; code < combos && !timed_out; ++code) {
    std::vector<bool> mu(ns, true);
    for (std::size_t i = 0; i < optional.size(); ++i) {
      mu[optional[i]] = ((code >> (optional.size() - 1 - i)) & 1U) != 0;
    }
    std::vector<std::size_t> dests;
    for (std::size_t s = 0; s < ns; ++s) {
      if (mu[s]) dests.push_back(s);
    }
    // Flows into inactive servers are invalid, so rows only spread over active ones.
    if (dests.empty() && !rows.empty()) continue;

    std::vector<std::vector<int>> comp(rows.size(), std::vector<int>(dests.size(), 0));
    for (std::size_t r = 0; r < rows.size(); ++r) comp[r].back() = rows[r].total;
    FlowTensor x(nk, ns);
    const auto write_row = [&](std::size_t r) {
      for (std::size_t j = 0; j < dests.size(); ++j) {
        x(rows[r].k, rows[r].src, dests[j]) = comp[r][j];
      }
    };
    for (std::size_t r = 0; r < rows.size(); ++r) write_row(r);

    while (true) {
      ++evaluations;
      if (plan_is_valid(problem, x, mu)) {
        const double obj = objective_eval(problem, x, mu);
        if (!std::isfinite(best) || obj < best - 1e-12 * std::fabs(best)) {
          best = obj;
          best_x = x;
          best_mu = mu;
        }
      }
      if ((evaluations & 4095) == 0 && clock.elapsed_s() > limits.time_limit_s) {
        timed_out = true;
        break;
      }
      std::size_t r = rows.size();
      bool advanced = false;
      while (r-- > 0) {
        if (next_composition(comp[r])) {
          write_row(r);
          advanced = true;
          break;
        }
        std::fill(comp[r].begin(), comp[r].end(), 0);
        comp[r].back() = rows[r].total;
        write_row(r);
      }
      if (!advanced) break;
    }
  }

  if (!std::isfinite(best)) {
    SolveResult out = detail::infeasible_result(problem, "bruteforce", clock.elapsed_s());
    out.report.nodes_explored = evaluations;
    if (timed_out) out.report.status = SolveStatus::kTimeLimit;
    return out;
  }
  SolveResult out;
  out.plan = detail::make_plan(problem, std::move(best_x), std::move(best_mu));
  out.report.status = timed_out ? SolveStatus::kTimeLimit : SolveStatus::kOptimal;
  out.report.objective = out.plan.total_energy_j;
  out.report.lower_bound = timed_out ? -std::numeric_limits<double>::infinity() : best;
  out.report.mip_gap = relative_gap(out.report.objective, out.report.lower_bound);
  out.report.nodes_explored = evaluations;
  out.report.solver = "bruteforce";
  out.report.runtime_s = clock.elapsed_s();
  return out;
}

}  // namespace ricmig
