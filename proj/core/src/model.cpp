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

#include "ricmig/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ricmig/errors.hpp"

namespace ricmig {

namespace {

double floor0(double v) { return v > 0.0 ? v : 0.0; }

void require_count(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

void require_same_size(std::span<const XAppClass> classes, std::span<const int> counts) {
  if (classes.size() != counts.size()) {
    throw std::invalid_argument("per-class counts do not match the class list");
  }
}

// Sum over classes of the floored per-class SDL affine term for one metric.
double sdl_sum(std::span<const XAppClass> classes, std::span<const int> counts, Metric metric,
               const Calibration& cal, const Regime& regime) {
  require_same_size(classes, counts);
  double sum = 0.0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    require_count(counts[k], "xApp count");
    const LinearCoeffs c = cal.sdl_linear(classes[k].id, metric, regime);
    sum += floor0(c.slope * counts[k] + c.intercept);
  }
  return sum;
}

}  // namespace

double traffic_load(const XAppClass& cls, int count) {
  require_count(count, "xApp count");
  return static_cast<double>(count) * cls.msg_size_bytes / cls.msg_period_s;
}

double sdl_downtime() { return 0.0; }

double sm_downtime(Strategy strategy, int outgoing, const Calibration& cal, const Regime& regime) {
  if (!is_stateful(strategy)) throw std::invalid_argument("sm_downtime needs a stateful strategy");
  require_count(outgoing, "outgoing count");
  if (outgoing == 0) return 0.0;
  const KpiCoeffs c = cal.kpi(strategy, regime);
  return c.delta_d * outgoing + c.b_d;
}

double migration_duration(Strategy strategy, int outgoing, const Calibration& cal,
                          const Regime& regime) {
  require_count(outgoing, "outgoing count");
  if (outgoing == 0) return 0.0;
  if (strategy == Strategy::kSmMr) return sm_downtime(strategy, outgoing, cal, regime);
  const KpiCoeffs c = cal.kpi(strategy, regime);
  return c.delta_m * outgoing + c.b_m;
}

double instantiation_time(int new_count, const Calibration& cal, const Regime& regime) {
  require_count(new_count, "new xApp count");
  if (new_count == 0) return 0.0;
  const KpiCoeffs c = cal.kpi(Strategy::kSdl, regime);
  return c.delta_m * new_count + c.b_m;
}

double defrag_downtime(std::span<const XAppClass> classes, std::span<const int> counts,
                       const Calibration& cal, const Regime& regime) {
  require_same_size(classes, counts);
  double t = 0.0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    require_count(counts[k], "xApp count");
    t += cal.sigma_s(classes[k].id, regime) * counts[k];
  }
  return t;
}

SdlFeasibility sdl_feasible(std::span<const XAppClass> classes, std::span<const int> counts,
                            const ScenarioParams& params, const Calibration& cal) {
  SdlFeasibility out;
  out.defrag_downtime_s = defrag_downtime(classes, counts, cal, regime_of(params));
  out.defrag_margin_s = params.max_defrag_downtime_s - out.defrag_downtime_s;
  out.active_time_s = params.maintenance_period_s - out.defrag_downtime_s;
  out.feasible = out.defrag_margin_s > 0.0 && out.active_time_s > 0.0;
  return out;
}

double strategy_overhead(Strategy strategy, Resource resource, std::span<const XAppClass> classes,
                         std::span<const int> total_counts, std::size_t server_count,
                         const Calibration& cal, const Regime& regime, bool participates,
                         bool active) {
  if (server_count == 0) throw std::invalid_argument("server_count must be at least 1");
  if (!active) return 0.0;
  if (strategy == Strategy::kSdl) {
    return sdl_sum(classes, total_counts, metric_of(resource), cal, regime) /
           static_cast<double>(server_count);
  }
  return participates ? cal.sm_overhead(strategy, metric_of(resource)) : 0.0;
}

double sm_migration_energy(Strategy strategy, double total_duration_s, const Calibration& cal) {
  if (!is_stateful(strategy)) {
    throw std::invalid_argument("sm_migration_energy needs a stateful strategy");
  }
  return cal.sm_overhead(strategy, Metric::kEnergy) * total_duration_s;
}

double sdl_energy_per_server(std::span<const XAppClass> classes, std::span<const int> total_counts,
                             std::size_t server_count, double slot_length_s,
                             const Calibration& cal, const Regime& regime) {
  if (server_count == 0) throw std::invalid_argument("server_count must be at least 1");
  return slot_length_s / static_cast<double>(server_count) *
         sdl_sum(classes, total_counts, Metric::kEnergy, cal, regime);
}

bool ServerSlice::participates() const {
  return std::any_of(outgoing.begin(), outgoing.end(), [](int n) { return n > 0; });
}

SlotModel::SlotModel(const Calibration& cal, std::span<const XAppClass> classes,
                     const ScenarioParams& params, std::size_t server_count,
                     std::vector<int> totals)
    : cal_(&cal),
      classes_(classes),
      params_(params),
      server_count_(server_count),
      totals_(std::move(totals)) {
  require_same_size(classes_, totals_);
  if (server_count_ == 0) throw std::invalid_argument("server_count must be at least 1");
}

ServerKpis SlotModel::kpis(const ServerSlice& slice) const {
  const std::size_t nk = classes_.size();
  const Regime reg = regime();
  const Strategy tau = params_.strategy;
  ServerKpis out;
  out.downtime_s.assign(nk, 0.0);
  out.migration_duration_s.assign(nk, 0.0);
  out.instantiation_s.assign(nk, 0.0);
  for (std::size_t k = 0; k < nk; ++k) {
    out.downtime_s[k] =
        is_stateful(tau) ? sm_downtime(tau, slice.outgoing[k], *cal_, reg) : sdl_downtime();
    out.migration_duration_s[k] = migration_duration(tau, slice.outgoing[k], *cal_, reg);
    out.instantiation_s[k] = instantiation_time(slice.incoming_new[k], *cal_, reg);
    out.window_s += out.migration_duration_s[k] + out.instantiation_s[k];
    out.total_downtime_s += out.downtime_s[k];
  }
  return out;
}

ResourceUsage SlotModel::resources(const ServerSlice& slice) const {
  ResourceUsage usage;
  const bool participates = slice.participates();
  for (Resource r : kAllResources) {
    const Metric m = metric_of(r);
    double v = slice.active ? cal_->server_idle(m) : 0.0;
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      v += cal_->xapp_load(classes_[k].id, m) * slice.hosted[k];
    }
    v += strategy_overhead(params_.strategy, r, classes_, totals_, server_count_, *cal_, regime(),
                           participates, slice.active);
    usage[r] = floor0(v);
  }
  return usage;
}

ServerEnergy SlotModel::energy(const ServerSlice& slice) const {
  const ServerKpis kpi = kpis(slice);
  const double slot = params_.slot_length_s;
  if (kpi.window_s > slot) {
    throw ModelDomainError("migration window of " + std::to_string(kpi.window_s) +
                           " s exceeds the slot length of " + std::to_string(slot) + " s");
  }
  const double q_e = cal_->server_idle(Metric::kEnergy);
  double initial_power = q_e;
  double final_power = slice.active ? q_e : 0.0;
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    const double p_e = cal_->xapp_load(classes_[k].id, Metric::kEnergy);
    initial_power += p_e * slice.initial[k];
    final_power += p_e * slice.hosted[k];
  }

  ServerEnergy e;
  if (is_stateful(params_.strategy)) {
    double duration = 0.0;
    for (double d : kpi.migration_duration_s) duration += d;
    e.strategy_j = sm_migration_energy(params_.strategy, duration, *cal_);
  } else if (slice.active) {
    e.strategy_j =
        sdl_energy_per_server(classes_, totals_, server_count_, slot, *cal_, regime());
  }
  e.window_j = kpi.window_s * floor0(initial_power);
  e.steady_j = (slot - kpi.window_s) * floor0(final_power);
  e.total_j = floor0(e.strategy_j + e.window_j + e.steady_j);
  return e;
}

double SlotModel::defrag_downtime() const {
  return ricmig::defrag_downtime(classes_, totals_, *cal_, regime());
}

SdlFeasibility SlotModel::sdl_feasibility() const {
  return sdl_feasible(classes_, totals_, params_, *cal_);
}

ServerEnergy server_energy(const ServerSlice& slice, std::span<const XAppClass> classes,
                           std::span<const int> total_counts, std::size_t server_count,
                           const ScenarioParams& params, const Calibration& cal) {
  SlotModel model(cal, classes, params, server_count,
                  std::vector<int>(total_counts.begin(), total_counts.end()));
  return model.energy(slice);
}

ResourceUsage server_resources(const ServerSlice& slice, std::span<const XAppClass> classes,
                               std::span<const int> total_counts, std::size_t server_count,
                               const ScenarioParams& params, const Calibration& cal) {
  SlotModel model(cal, classes, params, server_count,
                  std::vector<int>(total_counts.begin(), total_counts.end()));
  return model.resources(slice);
}

int FlowTensor::outgoing(std::size_t k, std::size_t src) const {
  int n = 0;
  for (std::size_t d = 0; d < nodes_; ++d) {
    if (d != src) n += (*this)(k, src, d);
  }
  return n;
}

int FlowTensor::hosted(std::size_t k, std::size_t dst) const {
  int n = 0;
  for (std::size_t s = 0; s < nodes_; ++s) n += (*this)(k, s, dst);
  return n;
}

ServerSlice slice_of(const FlowTensor& x, const std::vector<bool>& mu, const ClusterState& state,
                     std::size_t server) {
  const std::size_t nk = state.num_classes();
  ServerSlice slice;
  slice.outgoing.resize(nk);
  slice.incoming_new.resize(nk);
  slice.initial.resize(nk);
  slice.hosted.resize(nk);
  slice.active = mu[server];
  for (std::size_t k = 0; k < nk; ++k) {
    slice.outgoing[k] = x.outgoing(k, server);
    slice.incoming_new[k] = x(k, x.staging(), server);
    slice.initial[k] = state.initial_counts[k][server];
    slice.hosted[k] = x.hosted(k, server);
  }
  return slice;
}

ClusterEnergy cluster_energy(const FlowTensor& x, const std::vector<bool>& mu,
                             const ClusterState& state, const ScenarioParams& params,
                             const Calibration& cal) {
  const std::size_t ns = state.num_servers();
  if (x.num_classes() != state.num_classes() || x.num_servers() != ns || mu.size() != ns) {
    throw std::invalid_argument("plan dimensions do not match the cluster");
  }
  SlotModel model(cal, state.classes, params, ns, state.slot_totals());
  ClusterEnergy out;
  out.per_server.reserve(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    out.per_server.push_back(model.energy(slice_of(x, mu, state, s)));
    out.total_j += out.per_server.back().total_j;
  }
  return out;
}

}  // namespace ricmig
