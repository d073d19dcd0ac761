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

#include "ricmig/problem.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "ricmig/errors.hpp"

namespace ricmig {

namespace {

constexpr double kCapacityTol = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool exceeds(double value, double limit) {
  return value > limit + kCapacityTol * std::max(1.0, std::fabs(limit));
}

void check_dims(const SalProblem& p, const FlowTensor& x, const std::vector<bool>& mu) {
  if (x.num_classes() != p.num_classes() || x.num_servers() != p.num_servers() ||
      mu.size() != p.num_servers()) {
    throw std::invalid_argument("plan dimensions (" + std::to_string(x.num_classes()) +
                                " classes, " + std::to_string(x.num_servers()) +
                                " servers) do not match the problem (" +
                                std::to_string(p.num_classes()) + " classes, " +
                                std::to_string(p.num_servers()) + " servers)");
  }
}

// Walks every constraint; `sink(constraint, where, detail_fn)` returns false
// to stop early. detail_fn is only invoked by sinks that keep messages.
template <typename Sink>
void check_constraints(const SalProblem& p, const FlowTensor& x, const std::vector<bool>& mu,
                       Sink&& sink) {
  check_dims(p, x, mu);
  const std::size_t nk = p.num_classes();
  const std::size_t ns = p.num_servers();
  const std::size_t v = x.staging();
  const auto& st = p.state;
  const auto server = [&](std::size_t s) { return "server " + st.servers[s].id; };

  bool negative = false;
  for (int val : x.flat()) negative = negative || val < 0;
  if (negative) {
    if (!sink(Constraint::kNonNegative, std::string("x"),
              [] { return std::string("flow entries must be non-negative integers"); })) {
      return;
    }
  }

  // (12) every xApp of a physical server goes somewhere exactly once.
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t s = 0; s < ns; ++s) {
      int row = 0;
      for (std::size_t d = 0; d <= ns; ++d) row += x(k, s, d);
      const int want = st.initial_counts[k][s];
      if (row != want &&
          !sink(Constraint::kConservation, server(s), [&] {
            return "class " + st.classes[k].id + ": " + std::to_string(row) +
                   " xApps assigned, " + std::to_string(want) + " hosted";
          })) {
        return;
      }
    }
  }
  // (13) nothing flows into the staging server.
  int into_staging = 0;
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t s = 0; s <= ns; ++s) into_staging += x(k, s, v);
  }
  if (into_staging != 0 && !sink(Constraint::kNoInflowToStaging, std::string("staging"), [&] {
        return std::to_string(into_staging) + " xApps routed to the staging server";
      })) {
    return;
  }
  // (14) staged deployments all land on physical servers.
  for (std::size_t k = 0; k < nk; ++k) {
    int placed = 0;
    for (std::size_t d = 0; d < ns; ++d) placed += x(k, v, d);
    if (placed != st.pending_deploys[k] && !sink(Constraint::kStagingDrained, std::string("staging"), [&] {
          return "class " + st.classes[k].id + ": " + std::to_string(placed) + " of " +
                 std::to_string(st.pending_deploys[k]) + " staged xApps placed";
        })) {
      return;
    }
  }

  std::vector<int> outgoing(ns, 0);
  std::vector<int> hosted(ns, 0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t k = 0; k < nk; ++k) {
      outgoing[s] += x.outgoing(k, s);
      hosted[s] += x.hosted(k, s);
    }
  }
  // (15) only initially active servers can send xApps away.
  for (std::size_t s = 0; s < ns; ++s) {
    if (outgoing[s] > 0 && !st.initial_active[s] &&
        !sink(Constraint::kSourceWasActive, server(s),
              [&] { return std::string("inactive at slot start but migrates xApps away"); })) {
      return;
    }
  }
  // (16) xApps only land on active servers.
  for (std::size_t s = 0; s < ns; ++s) {
    if (hosted[s] > 0 && !mu[s] && !sink(Constraint::kDestinationActive, server(s), [&] {
          return "turned off but hosts " + std::to_string(hosted[s]) + " xApps";
        })) {
      return;
    }
  }
  // (17) an optional server stays on only if it hosts something.
  for (std::size_t s = 0; s < ns; ++s) {
    if (st.servers[s].optional && mu[s] && hosted[s] == 0 &&
        !sink(Constraint::kActiveHostsSomething, server(s),
              [&] { return std::string("optional server left on with no xApps"); })) {
      return;
    }
  }
  // (19) mandatory servers stay on.
  for (std::size_t s = 0; s < ns; ++s) {
    if (!st.servers[s].optional && !mu[s] &&
        !sink(Constraint::kMandatoryOn, server(s),
              [&] { return std::string("mandatory server turned off"); })) {
      return;
    }
  }
  // (21)-(22) cluster-wide SDL maintenance.
  if (p.sdl_constraints) {
    const SdlFeasibility f = p.model().sdl_feasibility();
    if (f.defrag_margin_s <= 0.0 && !sink(Constraint::kDefragDeadline, std::string("cluster"), [&] {
          return "defrag downtime " + fmt(f.defrag_downtime_s) + " s not below " +
                 fmt(p.params.max_defrag_downtime_s) + " s";
        })) {
      return;
    }
    if (f.active_time_s <= 0.0 && !sink(Constraint::kActiveTime, std::string("cluster"), [&] {
          return "defrag downtime " + fmt(f.defrag_downtime_s) +
                 " s leaves no active time in the maintenance period";
        })) {
      return;
    }
  }
  if (negative) return;

  const SlotModel model = p.model();
  for (std::size_t s = 0; s < ns; ++s) {
    const ServerSlice slice = slice_of(x, mu, st, s);
    const ServerKpis kpi = model.kpis(slice);
    // (18) capacity; an inactive server must use nothing.
    const ResourceUsage use = model.resources(slice);
    for (Resource r : kAllResources) {
      const double cap = mu[s] ? st.servers[s].capacity(r) : 0.0;
      if (exceeds(use[r], cap) && !sink(Constraint::kCapacity, server(s), [&] {
            return std::string(to_string(r)) + " usage " + fmt(use[r]) + " exceeds " + fmt(cap);
          })) {
        return;
      }
    }
    // (20) per-server downtime budget.
    if (p.downtime_constraint && exceeds(kpi.total_downtime_s, p.params.max_sm_downtime_s) &&
        !sink(Constraint::kDowntime, server(s), [&] {
          return "migration downtime " + fmt(kpi.total_downtime_s) + " s exceeds " +
                 fmt(p.params.max_sm_downtime_s) + " s";
        })) {
      return;
    }
    if (kpi.window_s > p.params.slot_length_s && !sink(Constraint::kSlotWindow, server(s), [&] {
          return "migration window " + fmt(kpi.window_s) + " s exceeds the slot";
        })) {
      return;
    }
  }
}

// Max flow on the bipartite source/destination graph of one class.
class Transport {
 public:
  explicit Transport(std::size_t n) : n_(n), allowed_(n * n, true) {
    for (std::size_t i = 0; i < n; ++i) allowed_[i * n + i] = false;
  }
  void forbid(std::size_t s, std::size_t d) { allowed_[s * n_ + d] = false; }
  void allow(std::size_t s, std::size_t d) { allowed_[s * n_ + d] = true; }

  int max_flow(const std::vector<int>& supply, const std::vector<int>& demand) const {
    // Nodes: 0 source, 1..n rows, n+1..2n cols, 2n+1 sink.
    const std::size_t nodes = 2 * n_ + 2;
    const std::size_t src = 0;
    const std::size_t snk = nodes - 1;
    const int inf = 1 << 29;
    std::vector<int> cap(nodes * nodes, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      cap[src * nodes + 1 + i] = supply[i];
      cap[(1 + n_ + i) * nodes + snk] = demand[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (allowed_[i * n_ + j]) cap[(1 + i) * nodes + 1 + n_ + j] = inf;
      }
    }
    int flow = 0;
    std::vector<std::size_t> prev(nodes);
    while (true) {
      std::fill(prev.begin(), prev.end(), nodes);
      prev[src] = src;
      std::deque<std::size_t> queue{src};
      while (!queue.empty() && prev[snk] == nodes) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t w = 0; w < nodes; ++w) {
          if (prev[w] == nodes && cap[u * nodes + w] > 0) {
            prev[w] = u;
            queue.push_back(w);
          }
        }
      }
      if (prev[snk] == nodes) break;
      int push = inf;
      for (std::size_t w = snk; w != src; w = prev[w]) {
        push = std::min(push, cap[prev[w] * nodes + w]);
      }
      for (std::size_t w = snk; w != src; w = prev[w]) {
        cap[prev[w] * nodes + w] -= push;
        cap[w * nodes + prev[w]] += push;
      }
      flow += push;
    }
    return flow;
  }

 private:
  std::size_t n_;
  std::vector<bool> allowed_;
};

}  // namespace

SlotModel SalProblem::model() const {
  return SlotModel(cal, state.classes, params, state.num_servers(), state.slot_totals());
}

SalProblem build_problem(const ClusterState& state, const ScenarioParams& params,
                         const Calibration& cal) {
  try {
    state.check();
  } catch (const StateError& e) {
    throw BuildError(std::string("inconsistent cluster state: ") + e.what());
  }
  for (int n : state.pending_undeploys) {
    if (n != 0) throw BuildError("undeployments must be applied before building the problem");
  }
  if (!(params.slot_length_s > 0.0)) throw BuildError("slot length must be positive");
  if (!(params.maintenance_period_s > 0.0)) throw BuildError("maintenance period must be positive");
  if (!(params.max_defrag_downtime_s > 0.0)) {
    throw BuildError("maximum defrag downtime must be positive");
  }
  if (!(params.state_size_bytes > 0.0)) throw BuildError("state size must be positive");
  if (params.max_sm_downtime_s < 0.0) throw BuildError("maximum SM downtime must be non-negative");

  SalProblem p{state, params, cal, state.total_xapps() + 1, is_stateful(params.strategy),
               params.strategy == Strategy::kSdl};

  // Resolve every coefficient the models will need so that a calibration
  // gap surfaces here rather than mid-search.
  const SlotModel model = p.model();
  const std::size_t nk = p.num_classes();
  ServerSlice probe{std::vector<int>(nk, 1), std::vector<int>(nk, 1), std::vector<int>(nk, 0),
                    std::vector<int>(nk, 1), true};
  (void)model.kpis(probe);
  (void)model.resources(probe);
  if (p.sdl_constraints) (void)model.defrag_downtime();
  probe.outgoing.assign(nk, 0);
  probe.incoming_new.assign(nk, 0);
  (void)model.energy(probe);
  return p;
}

CountMatrix MigrationPlan::final_counts() const {
  CountMatrix out(x.num_classes(), std::vector<int>(x.num_servers(), 0));
  for (std::size_t k = 0; k < x.num_classes(); ++k) {
    for (std::size_t s = 0; s < x.num_servers(); ++s) out[k][s] = x.hosted(k, s);
  }
  return out;
}

std::string label(Constraint c) {
  switch (c) {
    case Constraint::kNonNegative:
      return "(x>=0)";
    case Constraint::kSlotWindow:
      return "(window)";
    default:
      return "(" + std::to_string(static_cast<int>(c)) + ")";
  }
}

bool Verdict::names(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.constraint == c; });
}

Verdict validate_plan(const SalProblem& problem, const FlowTensor& x, const std::vector<bool>& mu) {
  Verdict verdict;
  check_constraints(problem, x, mu, [&](Constraint c, const std::string& where, auto&& detail) {
    verdict.valid = false;
    verdict.violations.push_back(Violation{c, where, detail()});
    return true;
  });
  std::stable_sort(verdict.violations.begin(), verdict.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return static_cast<int>(a.constraint) < static_cast<int>(b.constraint);
                   });
  return verdict;
}

Verdict validate_plan(const SalProblem& problem, const MigrationPlan& plan) {
  return validate_plan(problem, plan.x, plan.mu);
}

bool plan_is_valid(const SalProblem& problem, const FlowTensor& x, const std::vector<bool>& mu) {
  bool valid = true;
  check_constraints(problem, x, mu, [&](Constraint, const std::string&, auto&&) {
    valid = false;
    return false;
  });
  return valid;
}

double objective_eval(const SalProblem& problem, const FlowTensor& x, const std::vector<bool>& mu) {
  return cluster_energy(x, mu, problem.state, problem.params, problem.cal).total_j;
}

double objective_eval(const SalProblem& problem, const MigrationPlan& plan) {
  return objective_eval(problem, plan.x, plan.mu);
}

void derive_plan(const SalProblem& problem, MigrationPlan& plan) {
  const std::size_t ns = problem.num_servers();
  const SlotModel model = problem.model();
  plan.kpis.clear();
  plan.resources.clear();
  plan.energy.clear();
  plan.total_energy_j = 0.0;
  int active = 0;
  for (std::size_t s = 0; s < ns; ++s) {
    const ServerSlice slice = slice_of(plan.x, plan.mu, problem.state, s);
    plan.kpis.push_back(model.kpis(slice));
    plan.resources.push_back(model.resources(slice));
    plan.energy.push_back(model.energy(slice));
    plan.total_energy_j += plan.energy.back().total_j;
    active += plan.mu[s] ? 1 : 0;
  }
  plan.activation_ratio = ns == 0 ? 0.0 : static_cast<double>(active) / static_cast<double>(ns);
}

AggregateFlows aggregate(const FlowTensor& x) {
  const std::size_t nk = x.num_classes();
  const std::size_t ns = x.num_servers();
  AggregateFlows f{CountMatrix(nk, std::vector<int>(ns, 0)), CountMatrix(nk, std::vector<int>(ns, 0)),
                   CountMatrix(nk, std::vector<int>(ns, 0))};
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t d = 0; d < ns; ++d) {
        if (d == s) continue;
        f.outgoing[k][s] += x(k, s, d);
        f.incoming[k][d] += x(k, s, d);
      }
      f.fresh[k][s] = x(k, x.staging(), s);
    }
  }
  return f;
}

std::optional<FlowTensor> realize_flows(const SalProblem& problem, const AggregateFlows& flows) {
  const std::size_t nk = problem.num_classes();
  const std::size_t ns = problem.num_servers();
  FlowTensor x(nk, ns);
  for (std::size_t k = 0; k < nk; ++k) {
    std::vector<int> supply(ns);
    std::vector<int> demand(ns);
    int total = 0;
    int total_in = 0;
    for (std::size_t s = 0; s < ns; ++s) {
      supply[s] = flows.outgoing[k][s];
      demand[s] = flows.incoming[k][s];
      const int stay = problem.state.initial_counts[k][s] - supply[s];
      if (supply[s] < 0 || demand[s] < 0 || stay < 0 || flows.fresh[k][s] < 0) return std::nullopt;
      x(k, s, s) = stay;
      x(k, x.staging(), s) = flows.fresh[k][s];
      total += supply[s];
      total_in += demand[s];
    }
    if (total != total_in) return std::nullopt;
    if (total == 0) continue;

    Transport graph(ns);
    if (graph.max_flow(supply, demand) != total) return std::nullopt;
    // Fix cells in lexicographic order at the least flow any completion allows.
    int remaining = total;
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t d = 0; d < ns; ++d) {
        if (d == s) continue;
        graph.forbid(s, d);
        const int least = remaining - graph.max_flow(supply, demand);
        x(k, s, d) = least;
        supply[s] -= least;
        demand[d] -= least;
        remaining -= least;
      }
    }
  }
  return x;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kGapReached:
      return "gap_reached";
    case SolveStatus::kTimeLimit:
      return "time_limit";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "?";
}

double relative_gap(double objective, double lower_bound) {
  if (!std::isfinite(objective) || !std::isfinite(lower_bound)) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(0.0, objective - lower_bound) / std::max(std::fabs(objective), 1e-9);
}

}  // namespace ricmig
