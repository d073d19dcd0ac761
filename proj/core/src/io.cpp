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

#include "ricmig/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ricmig/errors.hpp"

namespace ricmig {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

ordered_json parse_document(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(what + ": malformed JSON: " + e.what());
  }
}

void require_object(const ordered_json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
}

void allow_keys(const ordered_json& obj, const std::string& where,
                std::initializer_list<const char*> keys) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : keys) ok = ok || item.key() == k;
    if (!ok) fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
  }
}

const ordered_json& member(const ordered_json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double number(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

double positive(const ordered_json& v, const std::string& where) {
  const double d = number(v, where);
  if (!(d > 0.0)) fail(where, "must be positive");
  return d;
}

int count(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(where, "expected an integer");
  const auto n = v.get<long long>();
  if (n < 0) fail(where, "must be non-negative");
  if (n > 1000000) fail(where, "too large");
  return static_cast<int>(n);
}

std::string text(const ordered_json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

bool flag(const ordered_json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "expected true or false");
  return v.get<bool>();
}

Strategy strategy_of(const ordered_json& v, const std::string& where) {
  const auto s = parse_strategy(text(v, where));
  if (!s) fail(where, "expected \"sdl\", \"sm-mr\" or \"sm-md\"");
  return *s;
}

ordered_json rounded(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

std::vector<XAppClass> parse_classes(const ordered_json& doc) {
  const auto it = doc.find("classes");
  if (it == doc.end()) return reference_classes();
  if (!it->is_array() || it->empty()) fail("classes", "expected a non-empty array");
  std::vector<XAppClass> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string w = "classes[" + std::to_string(i) + "]";
    const auto& c = (*it)[i];
    require_object(c, w);
    allow_keys(c, w, {"id", "msg_size_bytes", "msg_period_s"});
    out.push_back(XAppClass{text(member(c, "id", w), join(w, "id")),
                            positive(member(c, "msg_size_bytes", w), join(w, "msg_size_bytes")),
                            positive(member(c, "msg_period_s", w), join(w, "msg_period_s"))});
  }
  return out;
}

std::vector<ServerSpec> parse_servers(const ordered_json& doc, const std::string& where) {
  const auto& arr = member(doc, "servers", where);
  const std::string base = join(where, "servers");
  if (!arr.is_array() || arr.empty()) fail(base, "expected a non-empty array");
  std::vector<ServerSpec> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = base + "[" + std::to_string(i) + "]";
    const auto& s = arr[i];
    require_object(s, w);
    allow_keys(s, w, {"id", "optional", "cpu_cap", "mem_cap", "disk_cap"});
    ServerSpec spec;
    spec.id = text(member(s, "id", w), join(w, "id"));
    if (auto o = s.find("optional"); o != s.end()) spec.optional = flag(*o, join(w, "optional"));
    spec.cpu_cap = positive(member(s, "cpu_cap", w), join(w, "cpu_cap"));
    spec.mem_cap = positive(member(s, "mem_cap", w), join(w, "mem_cap"));
    spec.disk_cap = positive(member(s, "disk_cap", w), join(w, "disk_cap"));
    out.push_back(std::move(spec));
  }
  return out;
}

std::size_t class_index(const std::vector<XAppClass>& classes, const std::string& id,
                        const std::string& where) {
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].id == id) return k;
  }
  fail(where, "unknown class '" + id + "'");
}

// {"A": 3, "B": 1} -> per-class vector.
std::vector<int> per_class(const ordered_json& doc, const char* key,
                           const std::vector<XAppClass>& classes) {
  std::vector<int> out(classes.size(), 0);
  const auto it = doc.find(key);
  if (it == doc.end()) return out;
  require_object(*it, key);
  for (const auto& item : it->items()) {
    const std::string w = std::string(key) + "." + item.key();
    out[class_index(classes, item.key(), w)] = count(item.value(), w);
  }
  return out;
}

// Slot parameters. Strategy is required in scenarios, absent in sweep specs.
ScenarioParams parse_params(const ordered_json& obj, const std::string& where, bool sweep) {
  require_object(obj, where);
  if (sweep) {
    allow_keys(obj, where, {"slot_length_s", "slot_length_h", "max_sm_downtime_s",
                            "max_defrag_downtime_s"});
  } else {
    allow_keys(obj, where, {"strategy", "rho_mb", "nu_s", "slot_length_s", "slot_length_h",
                            "max_sm_downtime_s", "max_defrag_downtime_s"});
  }
  ScenarioParams p;
  if (!sweep) {
    p.strategy = strategy_of(member(obj, "strategy", where), join(where, "strategy"));
    if (auto it = obj.find("rho_mb"); it != obj.end()) {
      p.state_size_bytes = positive(*it, join(where, "rho_mb")) * kBytesPerMegabyte;
    }
    if (auto it = obj.find("nu_s"); it != obj.end()) {
      p.maintenance_period_s = positive(*it, join(where, "nu_s"));
    }
  }
  const bool has_s = obj.contains("slot_length_s");
  const bool has_h = obj.contains("slot_length_h");
  if (has_s && has_h) fail(join(where, "slot_length_h"), "conflicts with slot_length_s");
  if (has_s) p.slot_length_s = positive(obj.at("slot_length_s"), join(where, "slot_length_s"));
  if (has_h) {
    p.slot_length_s = positive(obj.at("slot_length_h"), join(where, "slot_length_h")) * kSecondsPerHour;
  }
  if (auto it = obj.find("max_sm_downtime_s"); it != obj.end()) {
    p.max_sm_downtime_s = number(*it, join(where, "max_sm_downtime_s"));
    if (p.max_sm_downtime_s < 0.0) fail(join(where, "max_sm_downtime_s"), "must be non-negative");
  }
  if (auto it = obj.find("max_defrag_downtime_s"); it != obj.end()) {
    p.max_defrag_downtime_s = positive(*it, join(where, "max_defrag_downtime_s"));
  }
  return p;
}

ordered_json params_to_json(const ScenarioParams& p) {
  ordered_json o;
  o["strategy"] = std::string(to_string(p.strategy));
  o["rho_mb"] = rounded(p.state_size_bytes / kBytesPerMegabyte);
  o["nu_s"] = rounded(p.maintenance_period_s);
  o["slot_length_s"] = rounded(p.slot_length_s);
  o["max_sm_downtime_s"] = rounded(p.max_sm_downtime_s);
  o["max_defrag_downtime_s"] = rounded(p.max_defrag_downtime_s);
  return o;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path + ": cannot write file");
  out << content;
  if (!out) throw Error(path + ": write failed");
}

ScenarioFile parse_scenario(const std::string& input) {
  const ordered_json doc = parse_document(input, "scenario");
  require_object(doc, "scenario");
  allow_keys(doc, "", {"units", "classes", "servers", "initial_counts", "initial_active",
                       "deploy", "undeploy", "params", "limits"});
  ScenarioFile out;
  out.state = ClusterState::make(parse_classes(doc), parse_servers(doc, ""));
  auto& st = out.state;
  const std::size_t ns = st.num_servers();

  if (auto it = doc.find("initial_counts"); it != doc.end()) {
    require_object(*it, "initial_counts");
    for (const auto& item : it->items()) {
      const std::string w = "initial_counts." + item.key();
      const std::size_t k = class_index(st.classes, item.key(), w);
      if (!item.value().is_array() || item.value().size() != ns) {
        fail(w, "expected an array of " + std::to_string(ns) + " counts");
      }
      for (std::size_t s = 0; s < ns; ++s) {
        st.initial_counts[k][s] = count(item.value()[s], w + "[" + std::to_string(s) + "]");
      }
    }
  }
  if (auto it = doc.find("initial_active"); it != doc.end()) {
    if (!it->is_array() || it->size() != ns) {
      fail("initial_active", "expected an array of " + std::to_string(ns) + " booleans");
    }
    for (std::size_t s = 0; s < ns; ++s) {
      st.initial_active[s] = flag((*it)[s], "initial_active[" + std::to_string(s) + "]");
    }
  }
  st.pending_deploys = per_class(doc, "deploy", st.classes);
  st.pending_undeploys = per_class(doc, "undeploy", st.classes);
  out.params = parse_params(member(doc, "params", ""), "params", false);

  if (auto it = doc.find("limits"); it != doc.end()) {
    require_object(*it, "limits");
    allow_keys(*it, "limits", {"time_limit_s", "gap"});
    SolveLimits lim;
    if (auto t = it->find("time_limit_s"); t != it->end()) {
      lim.time_limit_s = positive(*t, "limits.time_limit_s");
    }
    if (auto g = it->find("gap"); g != it->end()) {
      lim.gap_target = number(*g, "limits.gap");
      if (lim.gap_target < 0.0) fail("limits.gap", "must be non-negative");
    }
    out.limits = lim;
  }
  try {
    st.check();
  } catch (const StateError& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return out;
}

ScenarioFile read_scenario(const std::string& path) {
  try {
    return parse_scenario(read_text_file(path));
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw ParseError(path + ": " + msg);
  }
}

std::string scenario_to_json(const ScenarioFile& sc) {
  const auto& st = sc.state;
  ordered_json doc;
  doc["units"] = {{"time", "s"}, {"size", "bytes"}, {"state_size", "MB"}, {"cpu", "cores"},
                  {"mem", "GB"}, {"disk", "GB"}};
  doc["classes"] = ordered_json::array();
  for (const auto& c : st.classes) {
    doc["classes"].push_back(
        {{"id", c.id}, {"msg_size_bytes", rounded(c.msg_size_bytes)}, {"msg_period_s", rounded(c.msg_period_s)}});
  }
  doc["servers"] = ordered_json::array();
  for (const auto& s : st.servers) {
    doc["servers"].push_back({{"id", s.id},
                              {"optional", s.optional},
                              {"cpu_cap", rounded(s.cpu_cap)},
                              {"mem_cap", rounded(s.mem_cap)},
                              {"disk_cap", rounded(s.disk_cap)}});
  }
  doc["initial_counts"] = ordered_json::object();
  for (std::size_t k = 0; k < st.num_classes(); ++k) {
    doc["initial_counts"][st.classes[k].id] = st.initial_counts[k];
  }
  doc["initial_active"] = ordered_json::array();
  for (bool a : st.initial_active) doc["initial_active"].push_back(a);
  doc["deploy"] = ordered_json::object();
  doc["undeploy"] = ordered_json::object();
  for (std::size_t k = 0; k < st.num_classes(); ++k) {
    if (st.pending_deploys[k] > 0) doc["deploy"][st.classes[k].id] = st.pending_deploys[k];
    if (st.pending_undeploys[k] > 0) doc["undeploy"][st.classes[k].id] = st.pending_undeploys[k];
  }
  doc["params"] = params_to_json(sc.params);
  if (sc.limits) {
    doc["limits"] = {{"time_limit_s", rounded(sc.limits->time_limit_s)},
                     {"gap", rounded(sc.limits->gap_target)}};
  }
  return doc.dump(2) + "\n";
}

ScenarioFile generate_scenario(std::uint64_t seed, const GeneratorOptions& options) {
  if (options.servers < 1 || options.optional_servers < 0 ||
      options.optional_servers >= options.servers || options.xapps < 0 || options.deploys < 0) {
    throw std::invalid_argument("generator: need at least one mandatory server and non-negative counts");
  }
  std::mt19937_64 rng(seed);
  std::vector<ServerSpec> servers;
  for (int s = 0; s < options.servers; ++s) {
    ServerSpec spec;
    spec.id = "s" + std::to_string(s);
    spec.optional = s >= options.servers - options.optional_servers;
    spec.cpu_cap = 128.0;
    spec.mem_cap = 125.0;
    spec.disk_cap = 1000.0;
    servers.push_back(std::move(spec));
  }
  ScenarioFile out;
  out.state = ClusterState::make(reference_classes(), std::move(servers));
  std::uniform_int_distribution<std::size_t> pick_class(0, out.state.num_classes() - 1);
  std::uniform_int_distribution<std::size_t> pick_server(0, out.state.num_servers() - 1);
  for (int i = 0; i < options.xapps; ++i) ++out.state.initial_counts[pick_class(rng)][pick_server(rng)];
  for (int i = 0; i < options.deploys; ++i) ++out.state.pending_deploys[pick_class(rng)];
  out.params.strategy = options.strategy;
  return out;
}

std::string plan_to_json(const SalProblem& problem, const MigrationPlan& plan) {
  const auto& st = problem.state;
  const std::size_t nk = problem.num_classes();
  const std::size_t ns = problem.num_servers();
  ordered_json doc;
  doc["units"] = {{"time", "s"}, {"energy", "J"}, {"cpu", "cores"}, {"mem", "GB"}, {"disk", "GB"}};
  doc["strategy"] = std::string(to_string(problem.params.strategy));
  doc["classes"] = ordered_json::array();
  for (const auto& c : st.classes) doc["classes"].push_back(c.id);
  doc["servers"] = ordered_json::array();
  for (const auto& s : st.servers) doc["servers"].push_back(s.id);
  doc["staging"] = "staging";
  doc["mu"] = ordered_json::array();
  for (bool m : plan.mu) doc["mu"].push_back(m);
  // x[class][source][destination]; index num_servers is the staging server.
  doc["x"] = ordered_json::array();
  for (std::size_t k = 0; k < nk; ++k) {
    ordered_json rows = ordered_json::array();
    for (std::size_t s = 0; s <= ns; ++s) {
      ordered_json row = ordered_json::array();
      for (std::size_t d = 0; d <= ns; ++d) row.push_back(plan.x(k, s, d));
      rows.push_back(std::move(row));
    }
    doc["x"].push_back(std::move(rows));
  }
  const CountMatrix hosted = plan.final_counts();
  doc["per_server"] = ordered_json::array();
  for (std::size_t s = 0; s < ns && s < plan.energy.size(); ++s) {
    ordered_json h = ordered_json::array();
    for (std::size_t k = 0; k < nk; ++k) h.push_back(hosted[k][s]);
    const ServerKpis& kpi = plan.kpis[s];
    const ResourceUsage& use = plan.resources[s];
    const ServerEnergy& e = plan.energy[s];
    doc["per_server"].push_back(
        {{"id", st.servers[s].id},
         {"active", static_cast<bool>(plan.mu[s])},
         {"hosted", std::move(h)},
         {"window_s", rounded(kpi.window_s)},
         {"downtime_s", rounded(kpi.total_downtime_s)},
         {"cpu", rounded(use[Resource::kCpu])},
         {"mem", rounded(use[Resource::kMem])},
         {"disk", rounded(use[Resource::kDisk])},
         {"energy_j", {{"strategy", rounded(e.strategy_j)},
                       {"window", rounded(e.window_j)},
                       {"steady", rounded(e.steady_j)},
                       {"total", rounded(e.total_j)}}}});
  }
  doc["total_energy_j"] = rounded(plan.total_energy_j);
  doc["activation_ratio"] = rounded(plan.activation_ratio);
  return doc.dump(2) + "\n";
}

std::string report_to_json(const SolveReport& r, const ReportExtras& extras) {
  ordered_json doc;
  doc["units"] = {{"energy", "J"}, {"time", "s"}};
  doc["solver"] = r.solver;
  doc["status"] = std::string(to_string(r.status));
  doc["objective_j"] = rounded(r.objective);
  doc["lower_bound_j"] = rounded(r.lower_bound);
  doc["mip_gap"] = rounded(r.mip_gap);
  doc["nodes_explored"] = r.nodes_explored;
  if (extras.timing) doc["runtime_s"] = rounded(r.runtime_s);
  doc["infeasibility_hint"] = r.infeasibility_hint;
  if (extras.baseline_energy_j) doc["baseline_energy_j"] = rounded(*extras.baseline_energy_j);
  if (extras.energy_gain) doc["energy_gain"] = rounded(*extras.energy_gain);
  doc["trace"] = ordered_json::array();
  for (const BoundEvent& ev : r.trace) {
    ordered_json e;
    e["node"] = ev.node;
    if (extras.timing) e["elapsed_s"] = rounded(ev.elapsed_s);
    e["incumbent_j"] = rounded(ev.incumbent);
    e["lower_bound_j"] = rounded(ev.lower_bound);
    doc["trace"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

PlanFile parse_plan(const std::string& input) {
  const ordered_json doc = parse_document(input, "plan");
  require_object(doc, "plan");
  const auto& mu = member(doc, "mu", "");
  if (!mu.is_array()) fail("mu", "expected an array");
  const auto& x = member(doc, "x", "");
  if (!x.is_array()) fail("x", "expected an array");
  const std::size_t ns = mu.size();
  PlanFile out;
  out.x = FlowTensor(x.size(), ns);
  for (std::size_t s = 0; s < ns; ++s) out.mu.push_back(flag(mu[s], "mu[" + std::to_string(s) + "]"));
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::string wk = "x[" + std::to_string(k) + "]";
    if (!x[k].is_array() || x[k].size() != ns + 1) {
      fail(wk, "expected " + std::to_string(ns + 1) + " rows");
    }
    for (std::size_t s = 0; s <= ns; ++s) {
      const std::string ws = wk + "[" + std::to_string(s) + "]";
      const auto& row = x[k][s];
      if (!row.is_array() || row.size() != ns + 1) {
        fail(ws, "expected " + std::to_string(ns + 1) + " entries");
      }
      for (std::size_t d = 0; d <= ns; ++d) {
        const auto& v = row[d];
        const std::string wd = ws + "[" + std::to_string(d) + "]";
        if (!v.is_number_integer() && !v.is_number_unsigned()) fail(wd, "expected an integer");
        out.x(k, s, d) = static_cast<int>(v.get<long long>());
      }
    }
  }
  return out;
}

PlanFile read_plan(const std::string& path) { return parse_plan(read_text_file(path)); }

SweepSpec parse_sweep_spec(const std::string& input) {
  const ordered_json doc = parse_document(input, "sweep spec");
  require_object(doc, "sweep spec");
  allow_keys(doc, "", {"units", "classes", "servers", "dominant_classes", "dominant_share",
                       "counts", "rho_mb", "nu_s", "strategies", "params"});
  SweepSpec spec;
  spec.classes = parse_classes(doc);
  spec.servers = parse_servers(doc, "");
  {
    const auto& arr = member(doc, "dominant_classes", "");
    if (!arr.is_array()) fail("dominant_classes", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "dominant_classes[" + std::to_string(i) + "]";
      const std::string id = text(arr[i], w);
      (void)class_index(spec.classes, id, w);
      spec.dominant_classes.push_back(id);
    }
  }
  if (auto it = doc.find("dominant_share"); it != doc.end()) {
    spec.dominant_share = number(*it, "dominant_share");
    if (spec.dominant_share < 0.0 || spec.dominant_share > 1.0) {
      fail("dominant_share", "must lie in [0, 1]");
    }
  }
  {
    const auto& c = member(doc, "counts", "");
    if (c.is_array()) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        spec.counts.push_back(count(c[i], "counts[" + std::to_string(i) + "]"));
      }
    } else if (c.is_object()) {
      allow_keys(c, "counts", {"from", "to", "step"});
      const int from = count(member(c, "from", "counts"), "counts.from");
      const int to = count(member(c, "to", "counts"), "counts.to");
      const int step = count(member(c, "step", "counts"), "counts.step");
      if (step == 0) fail("counts.step", "must be positive");
      for (int n = from; n <= to; n += step) spec.counts.push_back(n);
    } else {
      fail("counts", "expected an array or {from, to, step}");
    }
  }
  const auto numbers = [&](const char* key, std::vector<double>& out) {
    const auto& arr = member(doc, key, "");
    if (!arr.is_array()) fail(key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(positive(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
    }
  };
  numbers("rho_mb", spec.rho_mb);
  numbers("nu_s", spec.nu_s);
  {
    const auto& arr = member(doc, "strategies", "");
    if (!arr.is_array()) fail("strategies", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      spec.strategies.push_back(strategy_of(arr[i], "strategies[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = doc.find("params"); it != doc.end()) spec.params = parse_params(*it, "params", true);
  std::set<std::string> ids;
  for (const auto& s : spec.servers) {
    if (!ids.insert(s.id).second) fail("servers", "duplicate server id '" + s.id + "'");
  }
  bool mandatory = false;
  for (const auto& s : spec.servers) mandatory = mandatory || !s.optional;
  if (!mandatory) fail("servers", "at least one server must be non-optional");
  return spec;
}

SweepSpec read_sweep_spec(const std::string& path) { return parse_sweep_spec(read_text_file(path)); }

std::string sweep_csv(const std::vector<SweepRow>& rows, bool timing) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  const auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const SweepRow& r : rows) {
    out += std::string(to_string(r.strategy)) + ',' + r.dominant_class + ',' + format_number(r.rho_mb) +
           ',' + format_number(r.nu_s) + ',' + std::to_string(r.n_total) + ',' +
           (r.feasible ? "true" : "false") + ',' + opt(r.energy_gain) + ',' +
           opt(r.activation_ratio) + ',' + opt(r.mip_gap) + ',' +
           (timing ? format_number(r.runtime_s) : std::string()) + '\n';
  }
  return out;
}

}  // namespace ricmig
