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

#ifndef RICMIG_MODEL_HPP
#define RICMIG_MODEL_HPP

#include <array>
#include <span>
#include <vector>

#include "ricmig/calibration.hpp"
#include "ricmig/types.hpp"

// Analytical KPI, resource and energy models of lossless xApp migration.
//
// Every function is a pure function of its arguments. Times are seconds,
// energies joules, power watts, sizes bytes. Affine outputs are floored at
// zero where a fitted slope may be negative.

namespace ricmig {

/// Aggregate traffic of `count` xApps of one class, in bytes per second.
double traffic_load(const XAppClass& cls, int count);

/// Migration downtime under SDL: state lives in the shared backend, so none.
double sdl_downtime();

/// Downtime of migrating `outgoing` xApps of one class off a server with a
/// stateful strategy. Zero when nothing moves.
double sm_downtime(Strategy strategy, int outgoing, const Calibration& cal, const Regime& regime);

/// Total migration duration of `outgoing` xApps of one class off a server.
/// sm-mr duration equals its downtime. Zero when nothing moves.
double migration_duration(Strategy strategy, int outgoing, const Calibration& cal,
                          const Regime& regime);

/// Time to instantiate `new_count` fresh xApps of one class on a server.
double instantiation_time(int new_count, const Calibration& cal, const Regime& regime);

/// Cluster-wide backend defragmentation downtime for per-class totals.
double defrag_downtime(std::span<const XAppClass> classes, std::span<const int> counts,
                       const Calibration& cal, const Regime& regime);

struct SdlFeasibility {
  bool feasible = true;
  double defrag_downtime_s = 0.0;
  /// max_defrag_downtime - defrag downtime; must be > 0.
  double defrag_margin_s = 0.0;
  /// maintenance period - defrag downtime; must be > 0.
  double active_time_s = 0.0;
};

SdlFeasibility sdl_feasible(std::span<const XAppClass> classes, std::span<const int> counts,
                            const ScenarioParams& params, const Calibration& cal);

/// Resource overhead a strategy puts on one server.
///
/// SDL spreads the backend cost evenly over all |S| servers and charges only
/// active ones. Stateful strategies charge the migration engine to active
/// servers with outgoing migrations.
double strategy_overhead(Strategy strategy, Resource resource, std::span<const XAppClass> classes,
                         std::span<const int> total_counts, std::size_t server_count,
                         const Calibration& cal, const Regime& regime, bool participates,
                         bool active);

struct ResourceUsage {
  std::array<double, 3> value{0.0, 0.0, 0.0};
  double operator[](Resource r) const { return value[static_cast<std::size_t>(r)]; }
  double& operator[](Resource r) { return value[static_cast<std::size_t>(r)]; }
};

/// Energy of the stateful migration engine for the summed per-class durations.
double sm_migration_energy(Strategy strategy, double total_duration_s, const Calibration& cal);

/// Share of the SDL backend energy over one slot charged to each active server.
double sdl_energy_per_server(std::span<const XAppClass> classes, std::span<const int> total_counts,
                             std::size_t server_count, double slot_length_s,
                             const Calibration& cal, const Regime& regime);

/// Per-class migration quantities of one physical server in a plan.
struct ServerSlice {
  std::vector<int> outgoing;  // to other physical servers
  std::vector<int> incoming_new;  // instantiated from the staging server
  std::vector<int> initial;  // n0 before the slot
  std::vector<int> hosted;  // after the slot
  bool active = true;

  bool participates() const;
};

struct ServerKpis {
  std::vector<double> downtime_s;  // per class, source side
  std::vector<double> migration_duration_s;  // per class, source side
  std::vector<double> instantiation_s;  // per class, destination side
  double window_s = 0.0;  // sum of durations and instantiations
  double total_downtime_s = 0.0;
};

struct ServerEnergy {
  double strategy_j = 0.0;  // SM engine or SDL backend share
  double window_j = 0.0;  // while migrating, at the initial hosting
  double steady_j = 0.0;  // rest of the slot, at the final hosting
  double total_j = 0.0;
};

/// Evaluator of one slot's models: binds calibration, classes, parameters,
/// cluster size and the per-class xApp totals N_k.
class SlotModel {
 public:
  SlotModel(const Calibration& cal, std::span<const XAppClass> classes,
            const ScenarioParams& params, std::size_t server_count, std::vector<int> totals);

  const Calibration& calibration() const { return *cal_; }
  const ScenarioParams& params() const { return params_; }
  Regime regime() const { return regime_of(params_); }
  std::span<const XAppClass> classes() const { return classes_; }
  std::size_t server_count() const { return server_count_; }
  const std::vector<int>& totals() const { return totals_; }

  ServerKpis kpis(const ServerSlice& slice) const;
  ResourceUsage resources(const ServerSlice& slice) const;
  /// Throws ModelDomainError when the migration window exceeds the slot.
  ServerEnergy energy(const ServerSlice& slice) const;

  double defrag_downtime() const;
  SdlFeasibility sdl_feasibility() const;

 private:
  const Calibration* cal_;
  std::span<const XAppClass> classes_;
  ScenarioParams params_;
  std::size_t server_count_;
  std::vector<int> totals_;
};

/// Energy of one server over the slot (stateless entry point).
ServerEnergy server_energy(const ServerSlice& slice, std::span<const XAppClass> classes,
                           std::span<const int> total_counts, std::size_t server_count,
                           const ScenarioParams& params, const Calibration& cal);

/// Resource usage of one server (stateless entry point).
ResourceUsage server_resources(const ServerSlice& slice, std::span<const XAppClass> classes,
                               std::span<const int> total_counts, std::size_t server_count,
                               const ScenarioParams& params, const Calibration& cal);

/// x[class][source][destination] over the physical servers plus the staging
/// server, which has index num_servers().
class FlowTensor {
 public:
  FlowTensor() = default;
  FlowTensor(std::size_t classes, std::size_t physical_servers)
      : classes_(classes),
        nodes_(physical_servers + 1),
        data_(classes * nodes_ * nodes_, 0) {}

  std::size_t num_classes() const { return classes_; }
  std::size_t num_servers() const { return nodes_ == 0 ? 0 : nodes_ - 1; }
  std::size_t staging() const { return num_servers(); }

  int& operator()(std::size_t k, std::size_t src, std::size_t dst) {
    return data_[(k * nodes_ + src) * nodes_ + dst];
  }
  int operator()(std::size_t k, std::size_t src, std::size_t dst) const {
    return data_[(k * nodes_ + src) * nodes_ + dst];
  }

  const std::vector<int>& flat() const { return data_; }
  std::vector<int>& flat() { return data_; }

  /// Out of src to any other node.
  int outgoing(std::size_t k, std::size_t src) const;
  /// Into dst from any node, including what stays.
  int hosted(std::size_t k, std::size_t dst) const;

  bool operator==(const FlowTensor&) const = default;

 private:
  std::size_t classes_ = 0;
  std::size_t nodes_ = 0;
  std::vector<int> data_;
};

/// Per-server slice of a flow tensor.
ServerSlice slice_of(const FlowTensor& x, const std::vector<bool>& mu, const ClusterState& state,
                     std::size_t server);

struct ClusterEnergy {
  double total_j = 0.0;
  std::vector<ServerEnergy> per_server;
};

/// Sum of server energies over the physical servers; the staging server is free.
ClusterEnergy cluster_energy(const FlowTensor& x, const std::vector<bool>& mu,
                             const ClusterState& state, const ScenarioParams& params,
                             const Calibration& cal);

}  // namespace ricmig

#endif  // RICMIG_MODEL_HPP
