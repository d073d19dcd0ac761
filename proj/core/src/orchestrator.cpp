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

#include "ricmig/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ricmig/errors.hpp"

namespace ricmig {

namespace {

// Spreads `totals` xApps per class over all servers, one at a time, each to
// the server with the lowest resulting CPU utilization (ties: lowest index).
// Classes go in decreasing per-xApp CPU order.
CountMatrix balance(const std::vector<XAppClass>& classes, const std::vector<ServerSpec>& servers,
                    const std::vector<int>& totals, const Calibration& cal) {
  const std::size_t nk = classes.size();
  const std::size_t ns = servers.size();
  CountMatrix target(nk, std::vector<int>(ns, 0));
  const double idle = cal.server_idle(Metric::kCpu);
  std::vector<double> cpu(ns, idle);
  std::vector<double> per(nk);
  for (std::size_t k = 0; k < nk; ++k) per[k] = cal.xapp_load(classes[k].id, Metric::kCpu);
  std::vector<std::size_t> order(nk);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return per[a] > per[b]; });
  for (std::size_t k : order) {
    for (int i = 0; i < totals[k]; ++i) {
      std::size_t best = 0;
      double best_util = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < ns; ++s) {
        const double util = (cpu[s] + per[k]) / servers[s].cpu_cap;
        if (util < best_util) {
          best_util = util;
          best = s;
        }
      }
      ++target[k][best];
      cpu[best] += per[k];
    }
  }
  return target;
}

void require_class_vector(const ClusterState& state, const std::vector<int>& v, const char* what) {
  if (v.size() != state.num_classes()) {
    throw StateError(std::string(what) + " has " + std::to_string(v.size()) + " entries for " +
                     std::to_string(state.num_classes()) + " classes");
  }
  for (int n : v) {
    if (n < 0) throw StateError(std::string(what) + " must be non-negative");
  }
}

}  // namespace

ClusterState apply_undeployments(const ClusterState& state, const std::vector<int>& n_minus,
                                 UndeployPolicy policy) {
  require_class_vector(state, n_minus, "undeployment vector");
  ClusterState out = state;
  const std::size_t ns = state.num_servers();
  for (std::size_t k = 0; k < state.num_classes(); ++k) {
    auto& row = out.initial_counts[k];
    const int hosted = std::accumulate(row.begin(), row.end(), 0);
    if (hosted < n_minus[k]) {
      throw StateError("cannot undeploy " + std::to_string(n_minus[k]) + " class '" +
                       state.classes[k].id + "' xApps; only " + std::to_string(hosted) +
                       " are hosted");
    }
    for (int i = 0; i < n_minus[k]; ++i) {
      std::size_t pick = ns;
      for (std::size_t s = 0; s < ns; ++s) {
        if (row[s] == 0) continue;
        if (pick == ns) {
          pick = s;
          continue;
        }
        const bool opt_s = state.servers[s].optional;
        const bool opt_p = state.servers[pick].optional;
        if (policy == UndeployPolicy::kDrainOptionalFirst && opt_s != opt_p) {
          if (opt_s) pick = s;
          continue;
        }
        if (row[s] > row[pick]) pick = s;
      }
      --row[pick];
    }
  }
  out.pending_undeploys.assign(state.num_classes(), 0);
  return out;
}

ClusterState stage_deployments(const ClusterState& state, const std::vector<int>& n_plus) {
  require_class_vector(state, n_plus, "deployment vector");
  ClusterState out = state;
  out.pending_deploys = n_plus;
  return out;
}

std::optional<MigrationPlan> baseline_plan(const SalProblem& problem) {
  const std::size_t nk = problem.num_classes();
  const std::size_t ns = problem.num_servers();
  const auto& st = problem.state;
  const CountMatrix target = balance(st.classes, st.servers, st.slot_totals(), problem.cal);

  AggregateFlows flows{CountMatrix(nk, std::vector<int>(ns, 0)),
                       CountMatrix(nk, std::vector<int>(ns, 0)),
                       CountMatrix(nk, std::vector<int>(ns, 0))};
  for (std::size_t k = 0; k < nk; ++k) {
    std::vector<int> deficit(ns, 0);
    int migrants = 0;
    for (std::size_t s = 0; s < ns; ++s) {
      const int stay = std::min(st.initial_counts[k][s], target[k][s]);
      flows.outgoing[k][s] = st.initial_counts[k][s] - stay;
      deficit[s] = target[k][s] - stay;
      migrants += flows.outgoing[k][s];
    }
    for (std::size_t s = 0; s < ns; ++s) {
      const int moved = std::min(migrants, deficit[s]);
      flows.incoming[k][s] = moved;
      flows.fresh[k][s] = deficit[s] - moved;
      migrants -= moved;
    }
  }
  auto x = realize_flows(problem, flows);
  if (!x) return std::nullopt;
  std::vector<bool> mu(ns, true);
  // The reference scheduler never powers servers down, so an empty optional
  // server left on is part of its behaviour rather than a violation.
  const Verdict verdict = validate_plan(problem, *x, mu);
  for (const Violation& v : verdict.violations) {
    if (v.constraint != Constraint::kActiveHostsSomething) return std::nullopt;
  }
  MigrationPlan plan;
  plan.x = std::move(*x);
  plan.mu = std::move(mu);
  derive_plan(problem, plan);
  return plan;
}

SlotResult run_timeslot(const ClusterState& state, const ScenarioParams& params,
                        const Calibration& cal, const SlotOptions& options) {
  const ClusterState current = apply_undeployments(state, state.pending_undeploys, options.policy);
  const SalProblem problem = build_problem(current, params, cal);
  SolveResult solved = solve(problem, options.solver, options.limits);

  SlotResult out;
  out.report = solved.report;
  out.feasible = solved.report.has_plan();
  out.baseline = baseline_plan(problem);
  if (out.baseline) out.baseline_energy_j = out.baseline->total_energy_j;
  if (!out.feasible) {
    out.next_state = state;
    return out;
  }
  out.plan = std::move(solved.plan);
  out.activation_ratio = out.plan.activation_ratio;
  if (out.baseline && out.baseline_energy_j > 0.0) {
    out.energy_gain = 1.0 - out.plan.total_energy_j / out.baseline_energy_j;
  }
  out.next_state = current;
  out.next_state.initial_counts = out.plan.final_counts();
  out.next_state.initial_active = out.plan.mu;
  out.next_state.pending_deploys.assign(current.num_classes(), 0);
  return out;
}

void SweepSpec::check() const {
  if (servers.empty()) throw std::invalid_argument("servers: at least one server is required");
  if (!(dominant_share >= 0.0 && dominant_share <= 1.0)) {
    throw std::invalid_argument("dominant_share must lie in [0, 1]");
  }
  for (const std::string& id : dominant_classes) {
    const bool known = std::any_of(classes.begin(), classes.end(),
                                   [&](const XAppClass& c) { return c.id == id; });
    if (!known) throw std::invalid_argument("dominant_classes: unknown class '" + id + "'");
  }
  for (int n : counts) {
    if (n < 0) throw std::invalid_argument("counts must be non-negative");
  }
  for (double r : rho_mb) {
    if (!(r > 0.0)) throw std::invalid_argument("rho_mb values must be positive");
  }
  for (double v : nu_s) {
    if (!(v > 0.0)) throw std::invalid_argument("nu_s values must be positive");
  }
}

std::vector<int> class_mix(std::size_t num_classes, std::size_t dominant, double share, int total) {
  if (dominant >= num_classes) throw std::invalid_argument("dominant class out of range");
  std::vector<double> exact(num_classes);
  for (std::size_t k = 0; k < num_classes; ++k) {
    const double part = num_classes == 1 ? 1.0
                        : k == dominant  ? share
                                         : (1.0 - share) / static_cast<double>(num_classes - 1);
    exact[k] = part * total;
  }
  std::vector<int> counts(num_classes);
  int assigned = 0;
  for (std::size_t k = 0; k < num_classes; ++k) {
    counts[k] = static_cast<int>(std::floor(exact[k] + 1e-9));
    assigned += counts[k];
  }
  std::vector<std::size_t> order(num_classes);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return exact[a] - counts[a] > exact[b] - counts[b] + 1e-12;
  });
  for (std::size_t i = 0; assigned < total; i = (i + 1) % num_classes) {
    ++counts[order[i]];
    ++assigned;
  }
  return counts;
}

ClusterState balanced_state(const std::vector<XAppClass>& classes,
                            const std::vector<ServerSpec>& servers, const std::vector<int>& counts,
                            const ScenarioParams& params, const Calibration& cal) {
  (void)params;
  ClusterState st = ClusterState::make(classes, servers);
  st.initial_counts = balance(classes, servers, counts, cal);
  return st;
}

std::optional<int> sm_outgoing_cap(Strategy strategy, const ScenarioParams& params,
                                   const Calibration& cal) {
  if (!is_stateful(strategy)) return std::nullopt;
  const KpiCoeffs c = cal.kpi(strategy, regime_of(params));
  if (!(c.delta_d > 0.0)) return std::nullopt;
  const double room = (params.max_sm_downtime_s - c.b_d) / c.delta_d;
  return room < 0.0 ? 0 : static_cast<int>(std::floor(room + 1e-9));
}

namespace {

template <typename Visit>
void for_each_point(const SweepSpec& spec, Visit&& visit) {
  spec.check();
  for (Strategy tau : spec.strategies) {
    for (const std::string& dom : spec.dominant_classes) {
      const auto it = std::find_if(spec.classes.begin(), spec.classes.end(),
                                   [&](const XAppClass& c) { return c.id == dom; });
      const auto dominant = static_cast<std::size_t>(it - spec.classes.begin());
      for (double rho : spec.rho_mb) {
        for (double nu : spec.nu_s) {
          ScenarioParams params = spec.params;
          params.strategy = tau;
          params.state_size_bytes = rho * kBytesPerMegabyte;
          params.maintenance_period_s = nu;
          visit(tau, dom, dominant, rho, nu, params);
        }
      }
    }
  }
}

}  // namespace

FeasibilitySweep feasibility_sweep(const SweepSpec& spec, const Calibration& cal,
                                   const SolveLimits& limits) {
  FeasibilitySweep out;
  for_each_point(spec, [&](Strategy tau, const std::string& dom, std::size_t dominant, double rho,
                           double nu, const ScenarioParams& params) {
    FeasibilitySummary summary{tau, dom, rho, nu, 0, sm_outgoing_cap(tau, params, cal)};
    for (int n : spec.counts) {
      const std::vector<int> mix = class_mix(spec.classes.size(), dominant, spec.dominant_share, n);
      const ClusterState st = balanced_state(spec.classes, spec.servers, mix, params, cal);
      const SalProblem problem = build_problem(st, params, cal);
      SolveResult r = solve_greedy(problem);
      if (!r.report.has_plan() && problem.model().sdl_feasibility().feasible) r = solve_bnb(problem, limits);
      SweepRow row;
      row.strategy = tau;
      row.dominant_class = dom;
      row.rho_mb = rho;
      row.nu_s = nu;
      row.n_total = n;
      row.feasible = r.report.has_plan();
      row.runtime_s = r.report.runtime_s;
      if (row.feasible) summary.max_feasible = std::max(summary.max_feasible, n);
      out.rows.push_back(std::move(row));
    }
    out.summary.push_back(summary);
  });
  return out;
}

std::vector<SweepRow> energy_sweep(const SweepSpec& spec, const Calibration& cal,
                                   const SlotOptions& options) {
  std::vector<SweepRow> rows;
  for_each_point(spec, [&](Strategy tau, const std::string& dom, std::size_t dominant, double rho,
                           double nu, const ScenarioParams& params) {
    for (int n : spec.counts) {
      const std::vector<int> mix = class_mix(spec.classes.size(), dominant, spec.dominant_share, n);
      const ClusterState st = balanced_state(spec.classes, spec.servers, mix, params, cal);
      const SlotResult slot = run_timeslot(st, params, cal, options);
      SweepRow row;
      row.strategy = tau;
      row.dominant_class = dom;
      row.rho_mb = rho;
      row.nu_s = nu;
      row.n_total = n;
      row.feasible = slot.feasible;
      row.runtime_s = slot.report.runtime_s;
      if (slot.feasible) {
        if (slot.baseline) row.energy_gain = slot.energy_gain;
        row.activation_ratio = slot.activation_ratio;
        if (std::isfinite(slot.report.mip_gap)) row.mip_gap = slot.report.mip_gap;
      }
      rows.push_back(std::move(row));
    }
  });
  return rows;
}

}  // namespace ricmig
