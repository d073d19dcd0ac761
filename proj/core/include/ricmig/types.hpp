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

#ifndef RICMIG_TYPES_HPP
#define RICMIG_TYPES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ricmig {

/// Lossless migration strategy used for one planning slot.
enum class Strategy { kSdl, kSmMr, kSmMd };

/// Server resource dimensions constrained by capacity.
enum class Resource { kCpu = 0, kMem = 1, kDisk = 2 };

inline constexpr std::array<Resource, 3> kAllResources = {Resource::kCpu, Resource::kMem,
                                                          Resource::kDisk};

/// Calibrated quantity families. kEnergy is power in watts, the others are
/// resource units (cores, GB).
enum class Metric { kEnergy, kCpu, kMem, kDisk };

std::string_view to_string(Strategy s);
std::string_view to_string(Resource r);
std::string_view to_string(Metric m);

/// Accepts "sdl", "sm-mr", "sm-md" (case-insensitive, '_' and '-' interchangeable).
std::optional<Strategy> parse_strategy(std::string_view text);
/// Accepts "E", "CPU", "MEM", "DISK" (case-insensitive).
std::optional<Metric> parse_metric(std::string_view text);

Metric metric_of(Resource r);

inline bool is_stateful(Strategy s) { return s != Strategy::kSdl; }

inline constexpr double kBytesPerMegabyte = 1.0e6;
inline constexpr double kSecondsPerHour = 3600.0;

/// Traffic class of an xApp: message size and message period.
struct XAppClass {
  std::string id;
  double msg_size_bytes = 0.0;
  double msg_period_s = 0.0;
};

/// Temporal and strategy parameters of one planning slot, all in SI units.
struct ScenarioParams {
  double state_size_bytes = 1.0 * kBytesPerMegabyte;
  double maintenance_period_s = 1.0;
  double slot_length_s = kSecondsPerHour;
  double max_sm_downtime_s = 300.0;
  double max_defrag_downtime_s = 1.0;
  Strategy strategy = Strategy::kSmMr;
};

/// The (state size, maintenance period) regime calibration entries are keyed by.
struct Regime {
  double rho_bytes = 1.0 * kBytesPerMegabyte;
  double nu_s = 1.0;
};

inline Regime regime_of(const ScenarioParams& p) {
  return Regime{p.state_size_bytes, p.maintenance_period_s};
}

struct ServerSpec {
  std::string id;
  bool optional = false;  // may be turned off
  double cpu_cap = 0.0;   // virtual cores
  double mem_cap = 0.0;   // GB
  double disk_cap = 0.0;  // GB

  double capacity(Resource r) const {
    switch (r) {
      case Resource::kCpu:
        return cpu_cap;
      case Resource::kMem:
        return mem_cap;
      case Resource::kDisk:
        return disk_cap;
    }
    return 0.0;
  }
};

/// counts[class][server]
using CountMatrix = std::vector<std::vector<int>>;

/// Physical cluster at the start of a slot. The virtual staging server is not
/// stored here; solvers synthesize it from pending_deploys.
struct ClusterState {
  std::vector<XAppClass> classes;
  std::vector<ServerSpec> servers;
  CountMatrix initial_counts;
  std::vector<bool> initial_active;
  std::vector<int> pending_deploys;
  std::vector<int> pending_undeploys;

  std::size_t num_classes() const { return classes.size(); }
  std::size_t num_servers() const { return servers.size(); }

  /// Per-class totals hosted on physical servers.
  std::vector<int> hosted_totals() const;
  /// Per-class totals including staged deployments (the N_k of the slot).
  std::vector<int> slot_totals() const;
  int total_xapps() const;

  /// Throws StateError naming the first violated invariant.
  void check() const;

  /// An empty state with the given classes and servers, all servers active.
  static ClusterState make(std::vector<XAppClass> classes, std::vector<ServerSpec> servers);
};

/// Table I of the measurement campaign: classes A-D.
std::vector<XAppClass> reference_classes();

}  // namespace ricmig

#endif  // RICMIG_TYPES_HPP
