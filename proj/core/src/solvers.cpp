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

#include <algorithm>
#include <limits>
#include <numeric>

#include "ricmig/solvers.hpp"
#include "solver_common.hpp"

namespace ricmig {

namespace detail {

bool sdl_blocked(const SalProblem& problem) {
  return problem.sdl_constraints && !problem.model().sdl_feasibility().feasible;
}

SolveResult infeasible_result(const SalProblem& problem, std::string solver, double runtime_s) {
  SolveResult out;
  out.plan.x = FlowTensor(problem.num_classes(), problem.num_servers());
  out.plan.mu.assign(problem.num_servers(), false);
  out.report.status = SolveStatus::kInfeasible;
  out.report.solver = std::move(solver);
  out.report.runtime_s = runtime_s;
  out.report.infeasibility_hint = infeasibility_hint(problem);
  return out;
}

MigrationPlan make_plan(const SalProblem& problem, FlowTensor x, std::vector<bool> mu) {
  MigrationPlan plan;
  plan.x = std::move(x);
  plan.mu = std::move(mu);
  derive_plan(problem, plan);
  return plan;
}

}  // namespace detail

namespace {

constexpr double kFitTol = 1e-9;

// Resource and window check for one open server that sends nothing.
bool open_server_fits(const SalProblem& p, const SlotModel& model, std::size_t s,
                      const CountMatrix& hosted, const CountMatrix& fresh) {
  const std::size_t nk = p.num_classes();
  ServerSlice slice;
  slice.outgoing.assign(nk, 0);
  slice.incoming_new.resize(nk);
  slice.initial.resize(nk);
  slice.hosted.resize(nk);
  slice.active = true;
  for (std::size_t k = 0; k < nk; ++k) {
    slice.incoming_new[k] = fresh[k][s];
    slice.initial[k] = p.state.initial_counts[k][s];
    slice.hosted[k] = hosted[k][s];
  }
  const ResourceUsage use = model.resources(slice);
  for (Resource r : kAllResources) {
    const double cap = p.state.servers[s].capacity(r);
    if (use[r] > cap + kFitTol * std::max(1.0, cap)) return false;
  }
  return model.kpis(slice).window_s <= p.params.slot_length_s;
}

double utilization(const SalProblem& p, const SlotModel& model, std::size_t s,
                   const CountMatrix& hosted, const CountMatrix& fresh) {
  const std::size_t nk = p.num_classes();
  ServerSlice slice;
  slice.outgoing.assign(nk, 0);
  slice.incoming_new.resize(nk);
  slice.initial.resize(nk);
  slice.hosted.resize(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    slice.incoming_new[k] = fresh[k][s];
    slice.initial[k] = p.state.initial_counts[k][s];
    slice.hosted[k] = hosted[k][s];
  }
  const ResourceUsage use = model.resources(slice);
  double u = 0.0;
  for (Resource r : kAllResources) {
    const double cap = p.state.servers[s].capacity(r);
    if (cap > 0.0) u = std::max(u, use[r] / cap);
  }
  return u;
}

// Consolidation onto the `open` servers: everything on closed servers moves,
// staged xApps are placed, nothing on open servers moves.
std::optional<std::pair<FlowTensor, std::vector<bool>>> pack(const SalProblem& p,
                                                             std::vector<bool> open) {
  const std::size_t nk = p.num_classes();
  const std::size_t ns = p.num_servers();
  const auto& n0 = p.state.initial_counts;
  const SlotModel model = p.model();
  const Regime reg = regime_of(p.params);

  // Closing a server whose drain breaks the downtime budget is not an option.
  if (p.downtime_constraint) {
    for (std::size_t s = 0; s < ns; ++s) {
      if (open[s]) continue;
      double downtime = 0.0;
      for (std::size_t k = 0; k < nk; ++k) {
        downtime += sm_downtime(p.params.strategy, n0[k][s], p.cal, reg);
      }
      if (downtime > p.params.max_sm_downtime_s) open[s] = true;
    }
  }

  CountMatrix hosted(nk, std::vector<int>(ns, 0));
  CountMatrix fresh(nk, std::vector<int>(ns, 0));
  CountMatrix incoming(nk, std::vector<int>(ns, 0));
  CountMatrix outgoing(nk, std::vector<int>(ns, 0));
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t s = 0; s < ns; ++s) {
      if (open[s]) {
        hosted[k][s] = n0[k][s];
      } else {
        outgoing[k][s] = n0[k][s];
      }
    }
  }

  std::vector<std::size_t> order(nk);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.cal.xapp_load(p.state.classes[a].id, Metric::kEnergy) >
           p.cal.xapp_load(p.state.classes[b].id, Metric::kEnergy);
  });

  for (std::size_t k : order) {
    int migrants = 0;
    for (std::size_t s = 0; s < ns; ++s) migrants += outgoing[k][s];
    const int total = migrants + p.state.pending_deploys[k];
    for (int unit = 0; unit < total; ++unit) {
      const bool is_fresh = unit >= migrants;
      std::size_t best = ns;
      double best_util = -1.0;
      for (std::size_t s = 0; s < ns; ++s) {
        if (!open[s]) continue;
        ++hosted[k][s];
        if (is_fresh) ++fresh[k][s];
        if (open_server_fits(p, model, s, hosted, fresh)) {
          const double u = utilization(p, model, s, hosted, fresh);
          if (u > best_util) {
            best_util = u;
            best = s;
          }
        }
        --hosted[k][s];
        if (is_fresh) --fresh[k][s];
      }
      if (best == ns) return std::nullopt;
      ++hosted[k][best];
      if (is_fresh) {
        ++fresh[k][best];
      } else {
        ++incoming[k][best];
      }
    }
  }

  std::vector<bool> mu = open;
  for (std::size_t s = 0; s < ns; ++s) {
    if (!p.state.servers[s].optional || !mu[s]) continue;
    int h = 0;
    for (std::size_t k = 0; k < nk; ++k) h += hosted[k][s];
    if (h == 0) mu[s] = false;
  }
  auto x = realize_flows(p, AggregateFlows{outgoing, incoming, fresh});
  if (!x || !plan_is_valid(p, *x, mu)) return std::nullopt;
  return std::make_pair(std::move(*x), std::move(mu));
}

}  // namespace

std::string_view to_string(SolverChoice c) {
  switch (c) {
    case SolverChoice::kBnb:
      return "bnb";
    case SolverChoice::kBruteforce:
      return "bruteforce";
    case SolverChoice::kGreedy:
      return "greedy";
  }
  return "?";
}

std::optional<SolverChoice> parse_solver(std::string_view text) {
  if (text == "bnb") return SolverChoice::kBnb;
  if (text == "bruteforce") return SolverChoice::kBruteforce;
  if (text == "greedy") return SolverChoice::kGreedy;
  return std::nullopt;
}

SolveResult solve_greedy(const SalProblem& problem) {
  const detail::Stopwatch clock;
  if (detail::sdl_blocked(problem)) {
    return detail::infeasible_result(problem, "greedy", clock.elapsed_s());
  }
  const std::size_t ns = problem.num_servers();
  const auto& st = problem.state;
  std::vector<std::size_t> optional;
  std::vector<int> load(ns, 0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t k = 0; k < problem.num_classes(); ++k) load[s] += st.initial_counts[k][s];
    if (st.servers[s].optional) optional.push_back(s);
  }
  std::stable_sort(optional.begin(), optional.end(),
                   [&](std::size_t a, std::size_t b) { return load[a] > load[b]; });

  for (std::size_t opened = 0; opened <= optional.size(); ++opened) {
    std::vector<bool> open(ns, false);
    for (std::size_t s = 0; s < ns; ++s) open[s] = !st.servers[s].optional;
    for (std::size_t i = 0; i < opened; ++i) open[optional[i]] = true;
    auto packed = pack(problem, open);
    if (!packed) continue;
    SolveResult out;
    out.plan = detail::make_plan(problem, std::move(packed->first), std::move(packed->second));
    out.report.status = SolveStatus::kGapReached;
    out.report.objective = out.plan.total_energy_j;
    out.report.solver = "greedy";
    out.report.runtime_s = clock.elapsed_s();
    return out;
  }
  return detail::infeasible_result(problem, "greedy", clock.elapsed_s());
}

SolveResult solve(const SalProblem& problem, SolverChoice choice, const SolveLimits& limits) {
  switch (choice) {
    case SolverChoice::kBruteforce:
      return solve_bruteforce(problem, limits);
    case SolverChoice::kGreedy:
      return solve_greedy(problem);
    case SolverChoice::kBnb:
      break;
  }
  return solve_bnb(problem, limits);
}

std::vector<std::string> infeasibility_hint(const SalProblem& problem) {
  const std::size_t nk = problem.num_classes();
  const std::size_t ns = problem.num_servers();
  const auto& st = problem.state;
  FlowTensor x(nk, ns);
  std::vector<int> hosted(ns, 0);
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t s = 0; s < ns; ++s) {
      x(k, s, s) = st.initial_counts[k][s];
      hosted[s] += st.initial_counts[k][s];
    }
  }
  for (std::size_t k = 0; k < nk && ns > 0; ++k) {
    for (int i = 0; i < st.pending_deploys[k]; ++i) {
      const auto it = std::min_element(hosted.begin(), hosted.end());
      const auto s = static_cast<std::size_t>(it - hosted.begin());
      ++x(k, x.staging(), s);
      ++hosted[s];
    }
  }
  std::vector<bool> mu(ns, true);
  for (std::size_t s = 0; s < ns; ++s) {
    if (st.servers[s].optional && hosted[s] == 0) mu[s] = false;
  }
  std::vector<std::string> out;
  for (const Violation& v : validate_plan(problem, x, mu).violations) {
    std::string l = label(v.constraint);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

}  // namespace ricmig
