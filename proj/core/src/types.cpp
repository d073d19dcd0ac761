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

#include "ricmig/types.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ricmig/errors.hpp"

namespace ricmig {

namespace {

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(lc == '_' ? '-' : lc);
  }
  return out;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kSdl:
      return "sdl";
    case Strategy::kSmMr:
      return "sm-mr";
    case Strategy::kSmMd:
      return "sm-md";
  }
  return "?";
}

std::string_view to_string(Resource r) {
  switch (r) {
    case Resource::kCpu:
      return "CPU";
    case Resource::kMem:
      return "MEM";
    case Resource::kDisk:
      return "DISK";
  }
  return "?";
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kEnergy:
      return "E";
    case Metric::kCpu:
      return "CPU";
    case Metric::kMem:
      return "MEM";
    case Metric::kDisk:
      return "DISK";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  const std::string t = normalize(text);
  if (t == "sdl") return Strategy::kSdl;
  if (t == "sm-mr") return Strategy::kSmMr;
  if (t == "sm-md") return Strategy::kSmMd;
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view text) {
  const std::string t = normalize(text);
  if (t == "e" || t == "energy") return Metric::kEnergy;
  if (t == "cpu") return Metric::kCpu;
  if (t == "mem") return Metric::kMem;
  if (t == "disk") return Metric::kDisk;
  return std::nullopt;
}

Metric metric_of(Resource r) {
  switch (r) {
    case Resource::kCpu:
      return Metric::kCpu;
    case Resource::kMem:
      return Metric::kMem;
    case Resource::kDisk:
      return Metric::kDisk;
  }
  return Metric::kCpu;
}

std::vector<int> ClusterState::hosted_totals() const {
  std::vector<int> totals(num_classes(), 0);
  for (std::size_t k = 0; k < num_classes(); ++k) {
    for (int c : initial_counts[k]) totals[k] += c;
  }
  return totals;
}

std::vector<int> ClusterState::slot_totals() const {
  std::vector<int> totals = hosted_totals();
  for (std::size_t k = 0; k < num_classes(); ++k) totals[k] += pending_deploys[k];
  return totals;
}

int ClusterState::total_xapps() const {
  int total = 0;
  for (int n : slot_totals()) total += n;
  return total;
}

void ClusterState::check() const {
  const std::size_t nk = num_classes();
  const std::size_t ns = num_servers();
  if (ns == 0) throw StateError("cluster has no servers");
  std::set<std::string> ids;
  for (const auto& c : classes) {
    if (!ids.insert(c.id).second) throw StateError("duplicate class id '" + c.id + "'");
    if (!(c.msg_size_bytes > 0.0) || !(c.msg_period_s > 0.0)) {
      throw StateError("class '" + c.id + "' needs positive message size and period");
    }
  }
  ids.clear();
  bool has_mandatory = false;
  for (const auto& s : servers) {
    if (!ids.insert(s.id).second) throw StateError("duplicate server id '" + s.id + "'");
    if (!(s.cpu_cap > 0.0) || !(s.mem_cap > 0.0) || !(s.disk_cap > 0.0)) {
      throw StateError("server '" + s.id + "' needs positive capacities");
    }
    has_mandatory = has_mandatory || !s.optional;
  }
  if (!has_mandatory) throw StateError("at least one server must be non-optional");
  if (initial_counts.size() != nk) throw StateError("initial_counts has wrong class dimension");
  if (initial_active.size() != ns) throw StateError("initial_active has wrong server dimension");
  if (pending_deploys.size() != nk || pending_undeploys.size() != nk) {
    throw StateError("pending deploy/undeploy vectors have wrong class dimension");
  }
  for (std::size_t k = 0; k < nk; ++k) {
    if (initial_counts[k].size() != ns) {
      throw StateError("initial_counts has wrong server dimension");
    }
    int total = 0;
    for (std::size_t s = 0; s < ns; ++s) {
      const int n = initial_counts[k][s];
      if (n < 0) throw StateError("negative xApp count");
      if (n > 0 && !initial_active[s]) {
        throw StateError("server '" + servers[s].id + "' is inactive but hosts class '" +
                         classes[k].id + "' xApps");
      }
      total += n;
    }
    if (pending_deploys[k] < 0 || pending_undeploys[k] < 0) {
      throw StateError("negative pending deploy/undeploy count");
    }
    if (total < pending_undeploys[k]) {
      throw StateError("cannot undeploy more class '" + classes[k].id + "' xApps than hosted");
    }
  }
}

ClusterState ClusterState::make(std::vector<XAppClass> classes, std::vector<ServerSpec> servers) {
  ClusterState st;
  const std::size_t nk = classes.size();
  const std::size_t ns = servers.size();
  st.classes = std::move(classes);
  st.servers = std::move(servers);
  st.initial_counts.assign(nk, std::vector<int>(ns, 0));
  st.initial_active.assign(ns, true);
  st.pending_deploys.assign(nk, 0);
  st.pending_undeploys.assign(nk, 0);
  return st;
}

std::vector<XAppClass> reference_classes() {
  return {
      {"A", 100.0, 1.0},
      {"B", 100.0, 0.1},
      {"C", 100.0e3, 1.0},
      {"D", 100.0e3, 0.1},
  };
}

}  // namespace ricmig
