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

// Branch-and-bound on an aggregated formulation. Per class k and server s the
// integer variables are o (xApps leaving s), i (xApps arriving from other
// physical servers), n (staged xApps instantiated on s) and the indicators
// yo = [o > 0], yn = [n > 0]; mu is the activation flag. Any aggregates with
// o_s + i_s <= sum(o) per class are realized by a flow tensor with the same
// energy, so the search never enumerates source-destination pairs.
//
// Server energy is E = E_strategy + W (q + P0) + dT (q mu + L) - q W mu - W L
// with W the migration window, P0 the initial and L the final load power.
// The relaxation replaces u = W mu and z = W L by their McCormick upper
// envelopes over the node's variable domains.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "ricmig/lp.hpp"
#include "ricmig/solvers.hpp"
#include "solver_common.hpp"

namespace ricmig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

enum Kind { kOut = 0, kIn = 1, kNew = 2, kYOut = 3, kYNew = 4, kKinds = 5 };

struct Node {
  long id = 0;
  double bound = -kInf;
  std::vector<int> lo;
  std::vector<int> hi;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

using Terms = std::vector<std::pair<int, double>>;

class BranchAndBound {
 public:
  BranchAndBound(const SalProblem& p, const SolveLimits& limits) : p_(p), limits_(limits) {
    nk_ = p.num_classes();
    ns_ = p.num_servers();
    const auto& st = p.state;
    const Strategy tau = p.params.strategy;
    const Regime reg = regime_of(p.params);
    slot_ = p.params.slot_length_s;

    n0_ = st.initial_counts;
    np_ = st.pending_deploys;
    moveable_.assign(nk_, 0);
    for (std::size_t k = 0; k < nk_; ++k) {
      for (std::size_t s = 0; s < ns_; ++s) moveable_[k] += n0_[k][s];
    }
    q_e_ = p.cal.server_idle(Metric::kEnergy);
    p_e_.resize(nk_);
    for (std::size_t k = 0; k < nk_; ++k) p_e_[k] = p.cal.xapp_load(st.classes[k].id, Metric::kEnergy);
    for (Resource r : kAllResources) {
      const auto ri = static_cast<std::size_t>(r);
      q_r_[ri] = p.cal.server_idle(metric_of(r));
      p_r_[ri].resize(nk_);
      for (std::size_t k = 0; k < nk_; ++k) {
        p_r_[ri][k] = p.cal.xapp_load(st.classes[k].id, metric_of(r));
      }
      const std::vector<int> totals = st.slot_totals();
      if (tau == Strategy::kSdl) {
        sdl_overhead_[ri] = strategy_overhead(tau, r, st.classes, totals, ns_, p.cal, reg, false, true);
      } else {
        sm_overhead_[ri] = p.cal.sm_overhead(tau, metric_of(r));
      }
    }
    const KpiCoeffs kpi = p.cal.kpi(tau, reg);
    const KpiCoeffs inst = p.cal.kpi(Strategy::kSdl, reg);
    if (tau == Strategy::kSmMr) {
      delta_m_ = kpi.delta_d;
      b_m_ = kpi.b_d;
    } else {
      delta_m_ = kpi.delta_m;
      b_m_ = kpi.b_m;
    }
    delta_d_ = kpi.delta_d;
    b_d_ = kpi.b_d;
    delta_n_ = inst.delta_m;
    b_n_ = inst.b_m;
    if (tau == Strategy::kSdl) {
      sdl_energy_ = sdl_energy_per_server(st.classes, st.slot_totals(), ns_, slot_, p.cal, reg);
    } else {
      sm_power_ = p.cal.sm_overhead(tau, Metric::kEnergy);
    }
    p0_.assign(ns_, 0.0);
    for (std::size_t s = 0; s < ns_; ++s) {
      for (std::size_t k = 0; k < nk_; ++k) p0_[s] += p_e_[k] * n0_[k][s];
    }
    num_int_ = kKinds * nk_ * ns_ + ns_;
  }

  SolveResult run(const MigrationPlan* warm_start);

 private:
  std::size_t var(Kind kind, std::size_t k, std::size_t s) const {
    return (static_cast<std::size_t>(kind) * nk_ + k) * ns_ + s;
  }
  std::size_t mu_var(std::size_t s) const { return kKinds * nk_ * ns_ + s; }
  bool uses_part() const {
    return std::any_of(sm_overhead_.begin(), sm_overhead_.end(), [](double b) { return b != 0.0; });
  }

  Node root() const;
  bool propagate(Node& node) const;
  lp::Problem relaxation(const Node& node, double& constant) const;
  void consider(const FlowTensor& x, const std::vector<bool>& mu, long node_id);
  bool try_candidate(const std::vector<double>& v, long node_id);
  std::size_t pick_split(const Node& node, const std::vector<double>& v) const;
  void record(long node);

  double window_of(const std::vector<double>& v, std::size_t s) const;
  double load_of(const std::vector<double>& v, std::size_t s) const;

  const SalProblem& p_;
  SolveLimits limits_;
  detail::Stopwatch clock_;
  std::size_t nk_ = 0;
  std::size_t ns_ = 0;
  std::size_t num_int_ = 0;
  double slot_ = 0.0;
  CountMatrix n0_;
  std::vector<int> np_;
  std::vector<int> moveable_;
  double q_e_ = 0.0;
  std::vector<double> p_e_;
  std::array<double, 3> q_r_{};
  std::array<std::vector<double>, 3> p_r_{};
  std::array<double, 3> sdl_overhead_{};
  std::array<double, 3> sm_overhead_{};
  double delta_m_ = 0.0, b_m_ = 0.0, delta_d_ = 0.0, b_d_ = 0.0, delta_n_ = 0.0, b_n_ = 0.0;
  double sdl_energy_ = 0.0;
  double sm_power_ = 0.0;
  std::vector<double> p0_;

  double incumbent_ = kInf;
  FlowTensor best_x_;
  std::vector<bool> best_mu_;
  double lower_bound_ = -kInf;
  std::vector<BoundEvent> trace_;
};

Node BranchAndBound::root() const {
  Node node;
  node.lo.assign(num_int_, 0);
  node.hi.assign(num_int_, 0);
  for (std::size_t k = 0; k < nk_; ++k) {
    for (std::size_t s = 0; s < ns_; ++s) {
      node.hi[var(kOut, k, s)] = n0_[k][s];
      node.hi[var(kIn, k, s)] = moveable_[k] - n0_[k][s];
      node.hi[var(kNew, k, s)] = np_[k];
      node.hi[var(kYOut, k, s)] = std::min(1, n0_[k][s]);
      node.hi[var(kYNew, k, s)] = std::min(1, np_[k]);
    }
  }
  for (std::size_t s = 0; s < ns_; ++s) {
    node.lo[mu_var(s)] = p_.state.servers[s].optional ? 0 : 1;
    node.hi[mu_var(s)] = 1;
  }
  return node;
}

bool BranchAndBound::propagate(Node& node) const {
  auto& lo = node.lo;
  auto& hi = node.hi;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s = 0; s < ns_; ++s) {
      const bool off = hi[mu_var(s)] == 0;
      for (std::size_t k = 0; k < nk_; ++k) {
        const std::size_t o = var(kOut, k, s), in = var(kIn, k, s), n = var(kNew, k, s);
        const std::size_t yo = var(kYOut, k, s), yn = var(kYNew, k, s);
        if (off) {
          lo[o] = std::max(lo[o], n0_[k][s]);
          hi[in] = std::min(hi[in], 0);
          hi[n] = std::min(hi[n], 0);
        }
        if (lo[o] >= 1) lo[yo] = std::max(lo[yo], 1);
        if (hi[o] == 0) hi[yo] = std::min(hi[yo], 0);
        if (hi[yo] == 0) hi[o] = std::min(hi[o], 0);
        if (lo[yo] == 1) lo[o] = std::max(lo[o], 1);
        if (lo[n] >= 1) lo[yn] = std::max(lo[yn], 1);
        if (hi[n] == 0) hi[yn] = std::min(hi[yn], 0);
        if (hi[yn] == 0) hi[n] = std::min(hi[n], 0);
        if (lo[yn] == 1) lo[n] = std::max(lo[n], 1);
      }
    }
  }
  for (std::size_t j = 0; j < num_int_; ++j) {
    if (lo[j] > hi[j]) return false;
  }
  return true;
}

lp::Problem BranchAndBound::relaxation(const Node& node, double& constant) const {
  const auto& lo = node.lo;
  const auto& hi = node.hi;
  const bool stateful = is_stateful(p_.params.strategy);
  const bool part = stateful && uses_part();
  lp::Problem lp;
  std::vector<int> col(num_int_);
  std::vector<double> cost(num_int_, 0.0);

  constant = 0.0;
  for (std::size_t s = 0; s < ns_; ++s) {
    const double wc = q_e_ + p0_[s];  // window power
    constant += slot_ * p0_[s];
    for (std::size_t k = 0; k < nk_; ++k) {
      const double sm = stateful ? sm_power_ : 0.0;
      cost[var(kOut, k, s)] = sm * delta_m_ + delta_m_ * wc - slot_ * p_e_[k];
      cost[var(kYOut, k, s)] = sm * b_m_ + b_m_ * wc;
      cost[var(kIn, k, s)] = slot_ * p_e_[k];
      cost[var(kNew, k, s)] = delta_n_ * wc + slot_ * p_e_[k];
      cost[var(kYNew, k, s)] = b_n_ * wc;
    }
    cost[mu_var(s)] = slot_ * q_e_ + (stateful ? 0.0 : sdl_energy_);
  }
  for (std::size_t j = 0; j < num_int_; ++j) {
    col[j] = lp.add_variable(lo[j], hi[j], cost[j]);
  }
  std::vector<int> part_col(ns_, -1), u_col(ns_), z_col(ns_);
  for (std::size_t s = 0; s < ns_; ++s) {
    if (part) part_col[s] = lp.add_variable(0.0, 1.0, 0.0);
    u_col[s] = lp.add_variable(0.0, lp::kInf, -q_e_);
    z_col[s] = lp.add_variable(0.0, lp::kInf, -1.0);
  }

  for (std::size_t k = 0; k < nk_; ++k) {
    Terms placed, balance;
    for (std::size_t s = 0; s < ns_; ++s) {
      placed.emplace_back(col[var(kNew, k, s)], 1.0);
      balance.emplace_back(col[var(kIn, k, s)], 1.0);
      balance.emplace_back(col[var(kOut, k, s)], -1.0);
    }
    lp.add_row(std::move(placed), lp::Sense::kEqual, np_[k]);
    lp.add_row(std::move(balance), lp::Sense::kEqual, 0.0);
    if (moveable_[k] == 0) continue;
    for (std::size_t s = 0; s < ns_; ++s) {
      Terms realizable{{col[var(kIn, k, s)], 1.0}};
      for (std::size_t t = 0; t < ns_; ++t) {
        if (t != s) realizable.emplace_back(col[var(kOut, k, t)], -1.0);
      }
      lp.add_row(std::move(realizable), lp::Sense::kLessEqual, 0.0);
    }
  }

  for (std::size_t s = 0; s < ns_; ++s) {
    const ServerSpec& spec = p_.state.servers[s];
    const int m = col[mu_var(s)];
    Terms window, delta, load;
    double w_lo = 0.0, w_hi = 0.0, l_lo = p0_[s], l_hi = p0_[s];
    int h0 = 0;
    for (std::size_t k = 0; k < nk_; ++k) {
      const std::size_t o = var(kOut, k, s), in = var(kIn, k, s), n = var(kNew, k, s);
      const std::size_t yo = var(kYOut, k, s), yn = var(kYNew, k, s);
      h0 += n0_[k][s];
      window.emplace_back(col[o], delta_m_);
      window.emplace_back(col[yo], b_m_);
      window.emplace_back(col[n], delta_n_);
      window.emplace_back(col[yn], b_n_);
      w_lo += delta_m_ * lo[o] + b_m_ * lo[yo] + delta_n_ * lo[n] + b_n_ * lo[yn];
      w_hi += delta_m_ * hi[o] + b_m_ * hi[yo] + delta_n_ * hi[n] + b_n_ * hi[yn];
      delta.emplace_back(col[o], -1.0);
      delta.emplace_back(col[in], 1.0);
      delta.emplace_back(col[n], 1.0);
      load.emplace_back(col[o], -p_e_[k]);
      load.emplace_back(col[in], p_e_[k]);
      load.emplace_back(col[n], p_e_[k]);
      l_lo += p_e_[k] * (lo[in] + lo[n] - hi[o]);
      l_hi += p_e_[k] * (hi[in] + hi[n] - lo[o]);

      if (n0_[k][s] > 1) {
        lp.add_row({{col[o], 1.0}, {col[yo], -static_cast<double>(n0_[k][s])}}, lp::Sense::kLessEqual, 0.0);
      }
      if (n0_[k][s] > 0) lp.add_row({{col[yo], 1.0}, {col[o], -1.0}}, lp::Sense::kLessEqual, 0.0);
      if (np_[k] > 1) {
        lp.add_row({{col[n], 1.0}, {col[yn], -static_cast<double>(np_[k])}}, lp::Sense::kLessEqual, 0.0);
      }
      if (np_[k] > 0) lp.add_row({{col[yn], 1.0}, {col[n], -1.0}}, lp::Sense::kLessEqual, 0.0);
      if (part && n0_[k][s] > 0) {
        lp.add_row({{part_col[s], 1.0}, {col[yo], -1.0}, {m, -1.0}}, lp::Sense::kGreaterEqual, -1.0);
      }
    }
    w_hi = std::min(w_hi, slot_);
    l_lo = std::max(l_lo, 0.0);
    l_hi = std::max(l_hi, l_lo);

    lp.add_row(window, lp::Sense::kLessEqual, slot_);

    // (16) and (17): hosted = h0 + delta.
    Terms dest = delta;
    dest.emplace_back(m, -static_cast<double>(p_.big_m));
    lp.add_row(std::move(dest), lp::Sense::kLessEqual, -h0);
    if (spec.optional) {
      Terms keep = delta;
      keep.emplace_back(m, -1.0);
      lp.add_row(std::move(keep), lp::Sense::kGreaterEqual, -h0);
    }

    // (18)
    for (Resource r : kAllResources) {
      const auto ri = static_cast<std::size_t>(r);
      const double cap = spec.capacity(r);
      Terms use;
      double base = 0.0;
      for (std::size_t k = 0; k < nk_; ++k) {
        const double pr = p_r_[ri][k];
        if (pr == 0.0) continue;
        use.emplace_back(col[var(kOut, k, s)], -pr);
        use.emplace_back(col[var(kIn, k, s)], pr);
        use.emplace_back(col[var(kNew, k, s)], pr);
        base += pr * n0_[k][s];
      }
      use.emplace_back(m, q_r_[ri] + sdl_overhead_[ri] - cap);
      if (part) use.emplace_back(part_col[s], sm_overhead_[ri]);
      lp.add_row(std::move(use), lp::Sense::kLessEqual, -base + 1e-9 * std::max(1.0, cap));
    }

    // (20)
    if (p_.downtime_constraint) {
      Terms down;
      for (std::size_t k = 0; k < nk_; ++k) {
        if (n0_[k][s] == 0) continue;
        down.emplace_back(col[var(kOut, k, s)], delta_d_);
        down.emplace_back(col[var(kYOut, k, s)], b_d_);
      }
      const double cap = p_.params.max_sm_downtime_s;
      if (!down.empty()) lp.add_row(std::move(down), lp::Sense::kLessEqual, cap + 1e-9 * std::max(1.0, cap));
    }

    // u <= W mu and z <= W L envelopes.
    const double mu_lo = lo[mu_var(s)], mu_hi = hi[mu_var(s)];
    const auto scaled = [](const Terms& t, double f) {
      Terms out;
      out.reserve(t.size());
      for (const auto& [c, a] : t) out.emplace_back(c, a * f);
      return out;
    };
    const auto join = [](Terms a, const Terms& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    {
      Terms row = join(scaled(window, -mu_lo), {{u_col[s], 1.0}, {m, -w_hi}});
      lp.add_row(std::move(row), lp::Sense::kLessEqual, -w_hi * mu_lo);
      row = join(scaled(window, -mu_hi), {{u_col[s], 1.0}, {m, -w_lo}});
      lp.add_row(std::move(row), lp::Sense::kLessEqual, -w_lo * mu_hi);
    }
    {
      // z <= w_hi L + l_lo W - w_hi l_lo
      Terms row = join(join(scaled(load, -w_hi), scaled(window, -l_lo)), {{z_col[s], 1.0}});
      lp.add_row(std::move(row), lp::Sense::kLessEqual, w_hi * p0_[s] - w_hi * l_lo);
      // z <= l_hi W + w_lo L - w_lo l_hi
      row = join(join(scaled(window, -l_hi), scaled(load, -w_lo)), {{z_col[s], 1.0}});
      lp.add_row(std::move(row), lp::Sense::kLessEqual, w_lo * p0_[s] - w_lo * l_hi);
    }
  }
  return lp;
}

double BranchAndBound::window_of(const std::vector<double>& v, std::size_t s) const {
  double w = 0.0;
  for (std::size_t k = 0; k < nk_; ++k) {
    w += delta_m_ * v[var(kOut, k, s)] + b_m_ * v[var(kYOut, k, s)] + delta_n_ * v[var(kNew, k, s)] +
         b_n_ * v[var(kYNew, k, s)];
  }
  return w;
}

double BranchAndBound::load_of(const std::vector<double>& v, std::size_t s) const {
  double l = p0_[s];
  for (std::size_t k = 0; k < nk_; ++k) {
    l += p_e_[k] * (v[var(kIn, k, s)] + v[var(kNew, k, s)] - v[var(kOut, k, s)]);
  }
  return l;
}

void BranchAndBound::record(long node) {
  trace_.push_back(BoundEvent{node, clock_.elapsed_s(), incumbent_, lower_bound_});
}

void BranchAndBound::consider(const FlowTensor& x, const std::vector<bool>& mu, long node_id) {
  if (!plan_is_valid(p_, x, mu)) return;
  const double obj = objective_eval(p_, x, mu);
  if (!std::isfinite(incumbent_) || obj < incumbent_ - 1e-12 * std::fabs(incumbent_)) {
    incumbent_ = obj;
    best_x_ = x;
    best_mu_ = mu;
    record(node_id);
  }
}

bool BranchAndBound::try_candidate(const std::vector<double>& v, long node_id) {
  AggregateFlows flows{CountMatrix(nk_, std::vector<int>(ns_)), CountMatrix(nk_, std::vector<int>(ns_)),
                       CountMatrix(nk_, std::vector<int>(ns_))};
  for (std::size_t k = 0; k < nk_; ++k) {
    for (std::size_t s = 0; s < ns_; ++s) {
      flows.outgoing[k][s] = static_cast<int>(std::lround(v[var(kOut, k, s)]));
      flows.incoming[k][s] = static_cast<int>(std::lround(v[var(kIn, k, s)]));
      flows.fresh[k][s] = static_cast<int>(std::lround(v[var(kNew, k, s)]));
    }
  }
  std::vector<bool> mu(ns_);
  for (std::size_t s = 0; s < ns_; ++s) mu[s] = std::lround(v[mu_var(s)]) == 1;
  const auto x = realize_flows(p_, flows);
  if (!x) return false;
  const double before = incumbent_;
  consider(*x, mu, node_id);
  return incumbent_ < before;
}

std::size_t BranchAndBound::pick_split(const Node& node, const std::vector<double>& v) const {
  // Server whose envelopes are loosest at the relaxed point.
  const std::size_t stride = uses_part() && is_stateful(p_.params.strategy) ? 3 : 2;
  std::size_t worst = ns_;
  double worst_gap = 0.0;
  for (std::size_t s = 0; s < ns_; ++s) {
    const std::size_t u = num_int_ + s * stride + stride - 2;
    const double w = window_of(v, s);
    const double gap = (v[u + 1] - w * load_of(v, s)) + q_e_ * (v[u] - w * v[mu_var(s)]);
    bool free_var = false;
    for (std::size_t k = 0; k < nk_ && !free_var; ++k) {
      for (Kind kind : {kOut, kIn, kNew, kYOut, kYNew}) {
        const std::size_t j = var(kind, k, s);
        if (node.lo[j] < node.hi[j]) free_var = true;
      }
    }
    if (free_var && gap > worst_gap) {
      worst_gap = gap;
      worst = s;
    }
  }
  std::size_t best = num_int_;
  int width = 0;
  const auto scan = [&](std::size_t s) {
    for (Kind kind : {kYOut, kYNew, kOut, kIn, kNew}) {
      for (std::size_t k = 0; k < nk_; ++k) {
        const std::size_t j = var(kind, k, s);
        if (node.hi[j] - node.lo[j] > width) {
          width = node.hi[j] - node.lo[j];
          best = j;
        }
      }
    }
  };
  if (worst < ns_) {
    scan(worst);
  } else {
    for (std::size_t s = 0; s < ns_; ++s) scan(s);
  }
  return best;
}

SolveResult BranchAndBound::run(const MigrationPlan* warm_start) {
  if (detail::sdl_blocked(p_)) return detail::infeasible_result(p_, "bnb", clock_.elapsed_s());

  // Every mandatory server idles through the slot and carries its SDL share.
  double trivial = 0.0;
  for (std::size_t s = 0; s < ns_; ++s) {
    if (!p_.state.servers[s].optional) trivial += slot_ * q_e_ + sdl_energy_;
  }
  lower_bound_ = trivial;

  const SolveResult greedy = solve_greedy(p_);
  if (greedy.report.has_plan()) consider(greedy.plan.x, greedy.plan.mu, 0);
  if (warm_start != nullptr && warm_start->x.num_classes() == nk_ &&
      warm_start->x.num_servers() == ns_ && warm_start->mu.size() == ns_) {
    consider(warm_start->x, warm_start->mu, 0);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  long explored = 0;
  Node start = root();
  start.id = next_id++;
  start.bound = trivial;
  bool timed_out = false;
  bool gap_hit = false;
  if (propagate(start)) open.push(std::move(start));

  const auto prune_level = [&] { return incumbent_ - 1e-9 * std::max(1.0, std::fabs(incumbent_)); };
  // The trace keeps bound moves of at least 0.01% plus the final bound.
  double traced = -kInf;
  const auto raise_bound = [&](double b, bool final) {
    b = std::min(b, incumbent_);
    if (b > lower_bound_) lower_bound_ = b;
    const bool moved = lower_bound_ > traced + 1e-4 * std::max(1.0, std::fabs(lower_bound_));
    if (moved || (final && lower_bound_ > traced)) {
      traced = lower_bound_;
      record(explored);
    }
  };

  while (!open.empty()) {
    if (explored > 0 && clock_.elapsed_s() > limits_.time_limit_s) {
      timed_out = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= prune_level()) continue;
    raise_bound(node.bound, false);
    if (limits_.gap_target > 0.0 && std::isfinite(incumbent_) &&
        relative_gap(incumbent_, lower_bound_) <= limits_.gap_target) {
      open.push(std::move(node));
      gap_hit = true;
      break;
    }
    ++explored;

    double constant = 0.0;
    const lp::Problem lp = relaxation(node, constant);
    const lp::Result res = lp.solve();
    if (res.status == lp::Status::kInfeasible) continue;

    std::vector<double> v;
    double bound = node.bound;
    if (res.status == lp::Status::kOptimal) {
      const double value = res.objective + constant;
      bound = std::max(bound, value - 1e-9 * std::max(1.0, std::fabs(value)));
      v = res.x;
      if (bound >= prune_level()) continue;
    }

    std::size_t split = num_int_;
    double at = 0.0;
    if (!v.empty()) {
      // Activation flags first, then the most fractional integer.
      double best_frac = -1.0;
      for (std::size_t s = 0; s < ns_; ++s) {
        const std::size_t j = mu_var(s);
        if (node.lo[j] == node.hi[j]) continue;
        const double frac = 0.5 - std::fabs(v[j] - 0.5);
        if (frac > best_frac) {
          best_frac = frac;
          split = j;
        }
      }
      if (split < num_int_) {
        at = 0.5;
      } else {
        best_frac = kIntTol;
        for (std::size_t j = 0; j < num_int_; ++j) {
          const double frac = std::fabs(v[j] - std::round(v[j]));
          if (frac > best_frac) {
            best_frac = frac;
            split = j;
          }
        }
        if (split < num_int_) {
          at = v[split];
        } else {
          try_candidate(v, next_id);
          if (bound >= prune_level()) continue;
          split = pick_split(node, v);
          if (split == num_int_) continue;
          at = 0.5 * (node.lo[split] + node.hi[split]) + 0.25;
        }
      }
    } else {
      for (std::size_t j = 0; j < num_int_ && split == num_int_; ++j) {
        if (node.lo[j] < node.hi[j]) split = j;
      }
      if (split == num_int_) continue;
      at = 0.5 * (node.lo[split] + node.hi[split]) + 0.25;
    }

    Node down = node;
    down.hi[split] = static_cast<int>(std::floor(at));
    down.bound = bound;
    Node up = std::move(node);
    up.lo[split] = static_cast<int>(std::floor(at)) + 1;
    up.bound = bound;
    for (Node* child : {&down, &up}) {
      if (child->lo[split] > child->hi[split] || !propagate(*child)) continue;
      child->id = next_id++;
      open.push(std::move(*child));
    }
  }

  SolveResult out;
  out.report.solver = "bnb";
  out.report.nodes_explored = explored;
  if (!std::isfinite(incumbent_)) {
    out = detail::infeasible_result(p_, "bnb", clock_.elapsed_s());
    out.report.nodes_explored = explored;
    out.report.trace = trace_;
    if (timed_out) {
      out.report.status = SolveStatus::kTimeLimit;
      out.report.lower_bound = lower_bound_;
    }
    return out;
  }
  if (open.empty()) {
    raise_bound(incumbent_, true);
    out.report.status = SolveStatus::kOptimal;
  } else {
    raise_bound(std::min(open.top().bound, incumbent_), true);
    out.report.status = gap_hit ? SolveStatus::kGapReached : SolveStatus::kTimeLimit;
  }
  out.plan = detail::make_plan(p_, best_x_, best_mu_);
  out.report.objective = out.plan.total_energy_j;
  out.report.lower_bound = std::min(lower_bound_, out.report.objective);
  out.report.mip_gap = relative_gap(out.report.objective, out.report.lower_bound);
  out.report.runtime_s = clock_.elapsed_s();
  out.report.trace = trace_;
  return out;
}

}  // namespace

SolveResult solve_bnb(const SalProblem& problem, const SolveLimits& limits,
                      const MigrationPlan* warm_start) {
  BranchAndBound search(problem, limits);
  return search.run(warm_start);
}

}  // namespace ricmig
