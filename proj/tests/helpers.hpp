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

#ifndef RICMIG_TESTS_HELPERS_HPP
#define RICMIG_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "ricmig/calibration.hpp"
#include "ricmig/problem.hpp"
#include "ricmig/types.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) {
  return std::string(RICMIG_FIXTURE_DIR) + "/" + name;
}

inline ricmig::XAppClass class_named(const std::string& id) {
  for (const ricmig::XAppClass& c : ricmig::reference_classes()) {
    if (c.id == id) return c;
  }
  return {};
}

inline ricmig::ServerSpec server(const std::string& id, bool optional, double cpu = 128.0,
                                 double mem = 125.0, double disk = 1000.0) {
  return ricmig::ServerSpec{id, optional, cpu, mem, disk};
}

/// `optional_flags.size()` servers with the reference capacities.
inline std::vector<ricmig::ServerSpec> servers(const std::vector<bool>& optional_flags) {
  std::vector<ricmig::ServerSpec> out;
  for (std::size_t s = 0; s < optional_flags.size(); ++s) {
    out.push_back(server("s" + std::to_string(s), optional_flags[s]));
  }
  return out;
}

/// Class-A-only cluster with the given per-server counts; server 0 mandatory.
inline ricmig::ClusterState class_a_state(const std::vector<int>& counts) {
  std::vector<bool> flags(counts.size(), true);
  flags[0] = false;
  ricmig::ClusterState st = ricmig::ClusterState::make({class_named("A")}, servers(flags));
  st.initial_counts[0] = counts;
  return st;
}

inline ricmig::ScenarioParams params(ricmig::Strategy strategy, double rho_mb = 1.0) {
  ricmig::ScenarioParams p;
  p.strategy = strategy;
  p.state_size_bytes = rho_mb * ricmig::kBytesPerMegabyte;
  return p;
}

/// Identity plan: everything stays, staged xApps go to server 0, all servers on.
inline ricmig::FlowTensor identity_flows(const ricmig::ClusterState& st) {
  ricmig::FlowTensor x(st.num_classes(), st.num_servers());
  for (std::size_t k = 0; k < st.num_classes(); ++k) {
    for (std::size_t s = 0; s < st.num_servers(); ++s) x(k, s, s) = st.initial_counts[k][s];
    x(k, x.staging(), 0) = st.pending_deploys[k];
  }
  return x;
}

/// Small random instance in the shape used by the oracle-equivalence check:
/// 3 servers, up to 2 classes, up to 6 xApps, baseline-feasible capacities.
inline ricmig::ClusterState random_small_state(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> n_classes(1, 2);
  std::uniform_int_distribution<int> n_xapps(0, 6);
  std::uniform_int_distribution<int> pick_class(0, 3);
  std::uniform_int_distribution<int> pick_node(0, 3);
  std::uniform_real_distribution<double> cpu(16.0, 64.0);

  const auto all = ricmig::reference_classes();
  std::vector<ricmig::XAppClass> classes;
  const int nk = n_classes(rng);
  while (static_cast<int>(classes.size()) < nk) {
    const ricmig::XAppClass& c = all[pick_class(rng)];
    bool dup = false;
    for (const auto& e : classes) dup = dup || e.id == c.id;
    if (!dup) classes.push_back(c);
  }
  std::vector<ricmig::ServerSpec> srv;
  for (int s = 0; s < 3; ++s) {
    srv.push_back(server("s" + std::to_string(s), s > 0 && coin(rng) == 1, cpu(rng)));
  }
  ricmig::ClusterState st = ricmig::ClusterState::make(classes, srv);
  const int n = n_xapps(rng);
  std::uniform_int_distribution<int> which(0, nk - 1);
  for (int i = 0; i < n; ++i) {
    const int k = which(rng);
    const int node = pick_node(rng);
    if (node == 3) {
      ++st.pending_deploys[k];
    } else {
      ++st.initial_counts[k][node];
    }
  }
  return st;
}

}  // namespace testing_support

#endif  // RICMIG_TESTS_HELPERS_HPP
