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

#include "ricmig/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "ricmig/errors.hpp"

namespace ricmig {

using nlohmann::json;

namespace {

constexpr std::array<Block, 6> kAllBlocks = {Block::kKpi,        Block::kSigma,
                                             Block::kSdlLinear,  Block::kSmOverhead,
                                             Block::kXappLoad,   Block::kServerIdle};

struct BlockSchema {
  bool strategy_allowed;
  bool strategy_required;
  bool class_allowed;
  bool metric_required;
  bool regime_allowed;
  std::vector<std::string> value_fields;
  std::vector<std::string> required_values;  // for entries that do not refine an existing key
};

const BlockSchema& schema(Block b) {
  static const BlockSchema kpi{true, true, true, false, true,
                               {"delta_d_s", "b_d_s", "delta_m_s", "b_m_s"}, {}};
  static const BlockSchema sigma{false, false, true, false, true, {"sigma_ms"}, {"sigma_ms"}};
  static const BlockSchema sdl{false, false, true, true, true, {"delta", "b"}, {"delta", "b"}};
  static const BlockSchema sm{true, true, true, true, true, {"b"}, {"b"}};
  static const BlockSchema load{false, false, true, true, true, {"p"}, {"p"}};
  static const BlockSchema idle{false, false, false, true, false, {"q"}, {"q"}};
  switch (b) {
    case Block::kKpi:
      return kpi;
    case Block::kSigma:
      return sigma;
    case Block::kSdlLinear:
      return sdl;
    case Block::kSmOverhead:
      return sm;
    case Block::kXappLoad:
      return load;
    case Block::kServerIdle:
      return idle;
  }
  return kpi;
}

bool same_number(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool key_field_matches(const std::optional<double>& entry, const std::optional<double>& query) {
  if (!entry) return true;
  return query && same_number(*entry, *query);
}

std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

auto sort_tuple(const CalibrationEntry& e) {
  const auto& k = e.key;
  return std::make_tuple(static_cast<int>(e.block),
                         k.strategy ? static_cast<int>(*k.strategy) : -1,
                         k.class_id.value_or(std::string{}), k.class_id.has_value(),
                         k.metric ? static_cast<int>(*k.metric) : -1, k.rho_mb.value_or(-1.0),
                         k.nu_s.value_or(-1.0));
}

CalibrationEntry make_entry(Block block, EntryKey key, std::map<std::string, double> values) {
  return CalibrationEntry{block, std::move(key), std::move(values)};
}

Calibration build_defaults() {
  Calibration cal;
  const auto add = [&cal](Block b, EntryKey k, std::map<std::string, double> v) {
    cal.merge(make_entry(b, std::move(k), std::move(v)), "defaults");
  };

  // Stateful migration KPIs (same for every class and maintenance period).
  struct SmRow {
    double rho_mb, mr_delta_d, md_delta_d, md_delta_m;
  };
  for (const SmRow& row : {SmRow{1, 10.55, 5.74, 20.28}, SmRow{10, 11.73, 6.49, 23.02},
                           SmRow{100, 23.3, 13.3, 48.2}}) {
    add(Block::kKpi, EntryKey{Strategy::kSmMr, {}, {}, row.rho_mb, {}},
        {{"delta_d_s", row.mr_delta_d}, {"b_d_s", 0.0}});
    add(Block::kKpi, EntryKey{Strategy::kSmMd, {}, {}, row.rho_mb, {}},
        {{"delta_d_s", row.md_delta_d}, {"b_d_s", 0.0}, {"delta_m_s", row.md_delta_m},
         {"b_m_s", 0.0}});
  }
  // SDL migration of a virtually stateless xApp, also used for instantiation.
  add(Block::kKpi, EntryKey{Strategy::kSdl, {}, {}, {}, {}},
      {{"delta_m_s", 0.08}, {"b_m_s", 4.27}});

  // SDL backend, measured at rho = 1 MB and nu = 1 s.
  struct SdlRow {
    const char* cls;
    double d_e, d_cpu, d_mem, d_disk, b_e, b_cpu, b_mem, b_disk, sigma_ms;
  };
  for (const SdlRow& r : {SdlRow{"A", -0.18, -0.00, 0.04, 0.01, 32.35, 5.32, 0.20, 0.00, 16.62},
                          SdlRow{"B", -0.09, 0.03, 0.04, 0.01, 33.60, 5.57, 0.17, 0.00, 17.07},
                          SdlRow{"C", -0.10, -0.03, 0.02, 0.00, 35.48, 4.97, 1.82, 0.00, 7.71},
                          SdlRow{"D", -0.06, -0.01, 0.08, 0.03, 40.20, 5.00, 1.04, 0.00, 11.62}}) {
    const std::string cls = r.cls;
    const auto key = [&cls](std::optional<Metric> m) {
      return EntryKey{{}, cls, m, 1.0, 1.0};
    };
    add(Block::kSigma, key(std::nullopt), {{"sigma_ms", r.sigma_ms}});
    add(Block::kSdlLinear, key(Metric::kEnergy), {{"delta", r.d_e}, {"b", r.b_e}});
    add(Block::kSdlLinear, key(Metric::kCpu), {{"delta", r.d_cpu}, {"b", r.b_cpu}});
    add(Block::kSdlLinear, key(Metric::kMem), {{"delta", r.d_mem}, {"b", r.b_mem}});
    add(Block::kSdlLinear, key(Metric::kDisk), {{"delta", r.d_disk}, {"b", r.b_disk}});
  }

  // Per-xApp load slopes; disk usage of xApps is negligible.
  struct LoadRow {
    const char* cls;
    double p_e, p_cpu, p_mem;
  };
  for (const LoadRow& r : {LoadRow{"A", 3.43, 0.47, 0.52}, LoadRow{"B", 16.48, 2.86, 0.52},
                           LoadRow{"C", 3.43, 0.47, 0.52}, LoadRow{"D", 16.48, 2.86, 0.52}}) {
    add(Block::kXappLoad, EntryKey{{}, std::string(r.cls), Metric::kEnergy, {}, {}},
        {{"p", r.p_e}});
    add(Block::kXappLoad, EntryKey{{}, std::string(r.cls), Metric::kCpu, {}, {}},
        {{"p", r.p_cpu}});
    add(Block::kXappLoad, EntryKey{{}, std::string(r.cls), Metric::kMem, {}, {}},
        {{"p", r.p_mem}});
  }
  add(Block::kXappLoad, EntryKey{{}, {}, Metric::kDisk, {}, {}}, {{"p", 0.0}});

  // Stateful migration engine overhead; memory and disk are negligible.
  add(Block::kSmOverhead, EntryKey{Strategy::kSmMr, {}, Metric::kCpu, {}, {}}, {{"b", 0.40}});
  add(Block::kSmOverhead, EntryKey{Strategy::kSmMd, {}, Metric::kCpu, {}, {}}, {{"b", 0.76}});
  add(Block::kSmOverhead, EntryKey{Strategy::kSmMr, {}, Metric::kEnergy, {}, {}}, {{"b", 17.87}});
  add(Block::kSmOverhead, EntryKey{Strategy::kSmMd, {}, Metric::kEnergy, {}, {}}, {{"b", 27.56}});
  for (Strategy s : {Strategy::kSmMr, Strategy::kSmMd}) {
    add(Block::kSmOverhead, EntryKey{s, {}, Metric::kMem, {}, {}}, {{"b", 0.0}});
    add(Block::kSmOverhead, EntryKey{s, {}, Metric::kDisk, {}, {}}, {{"b", 0.0}});
  }

  // Idle near-RT RIC consumption of an active server.
  add(Block::kServerIdle, EntryKey{{}, {}, Metric::kEnergy, {}, {}}, {{"q", 120.0}});
  add(Block::kServerIdle, EntryKey{{}, {}, Metric::kCpu, {}, {}}, {{"q", 0.1}});
  add(Block::kServerIdle, EntryKey{{}, {}, Metric::kMem, {}, {}}, {{"q", 5.7}});
  add(Block::kServerIdle, EntryKey{{}, {}, Metric::kDisk, {}, {}}, {{"q", 3.2}});
  return cal;
}

// ---- JSON ingestion ----

std::optional<Block> block_from_name(std::string_view name) {
  for (Block b : kAllBlocks) {
    if (to_string(b) == name) return b;
  }
  return std::nullopt;
}

bool is_wildcard(const json& v) { return v.is_string() && v.get<std::string>() == "*"; }

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw CalibrationLoadError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw CalibrationLoadError(where + ": value is not finite");
  return d;
}

CalibrationEntry parse_entry(Block block, const json& obj, const std::string& where) {
  if (!obj.is_object()) throw CalibrationLoadError(where + ": expected an object");
  const BlockSchema& sc = schema(block);
  CalibrationEntry e;
  e.block = block;
  for (const auto& [name, value] : obj.items()) {
    const std::string at = where + "." + name;
    if (name == "strategy" && sc.strategy_allowed) {
      if (!value.is_string()) throw CalibrationLoadError(at + ": expected a strategy name");
      auto s = parse_strategy(value.get<std::string>());
      if (!s) throw CalibrationLoadError(at + ": unknown strategy '" + value.dump() + "'");
      e.key.strategy = *s;
    } else if (name == "class" && sc.class_allowed) {
      if (is_wildcard(value)) continue;
      if (!value.is_string()) throw CalibrationLoadError(at + ": expected a class id");
      e.key.class_id = value.get<std::string>();
    } else if (name == "metric") {
      if (!sc.metric_required) throw CalibrationLoadError(at + ": unknown key");
      if (!value.is_string()) throw CalibrationLoadError(at + ": expected a metric name");
      auto m = parse_metric(value.get<std::string>());
      if (!m) throw CalibrationLoadError(at + ": unknown metric '" + value.dump() + "'");
      e.key.metric = *m;
    } else if ((name == "rho_mb" || name == "nu_s") && sc.regime_allowed) {
      if (is_wildcard(value)) continue;
      const double d = number_at(value, at);
      if (!(d > 0.0)) throw CalibrationLoadError(at + ": must be positive");
      (name == "rho_mb" ? e.key.rho_mb : e.key.nu_s) = d;
    } else if (std::find(sc.value_fields.begin(), sc.value_fields.end(), name) !=
               sc.value_fields.end()) {
      e.values[name] = number_at(value, at);
    } else {
      throw CalibrationLoadError(at + ": unknown key");
    }
  }
  if (sc.strategy_required && !e.key.strategy) {
    throw CalibrationLoadError(where + ".strategy: missing");
  }
  if (sc.metric_required && !e.key.metric) throw CalibrationLoadError(where + ".metric: missing");
  if (e.values.empty()) throw CalibrationLoadError(where + ": entry carries no coefficient");
  return e;
}

json key_to_json(const EntryKey& k) {
  json out = json::object();
  if (k.strategy) out["strategy"] = std::string(to_string(*k.strategy));
  if (k.class_id) out["class"] = *k.class_id;
  if (k.metric) out["metric"] = std::string(to_string(*k.metric));
  if (k.rho_mb) out["rho_mb"] = *k.rho_mb;
  if (k.nu_s) out["nu_s"] = *k.nu_s;
  return out;
}

}  // namespace

std::string_view to_string(Block b) {
  switch (b) {
    case Block::kKpi:
      return "kpi";
    case Block::kSigma:
      return "sigma";
    case Block::kSdlLinear:
      return "sdl_linear";
    case Block::kSmOverhead:
      return "sm_overhead";
    case Block::kXappLoad:
      return "xapp_load";
    case Block::kServerIdle:
      return "server_idle";
  }
  return "?";
}

int EntryKey::specificity() const {
  return (strategy ? 8 : 0) + (class_id ? 4 : 0) + (rho_mb ? 2 : 0) + (nu_s ? 1 : 0);
}

std::string EntryKey::describe() const {
  std::string out = "{";
  const auto part = [&out](const std::string& s) {
    if (out.size() > 1) out += ", ";
    out += s;
  };
  part("strategy=" + (strategy ? std::string(to_string(*strategy)) : "*"));
  part("class=" + class_id.value_or("*"));
  if (metric) part("metric=" + std::string(to_string(*metric)));
  part("rho_mb=" + (rho_mb ? fmt_number(*rho_mb) : "*"));
  part("nu_s=" + (nu_s ? fmt_number(*nu_s) : "*"));
  return out + "}";
}

std::string CoefficientQuery::describe() const {
  EntryKey k{strategy, class_id, metric, rho_mb, nu_s};
  return std::string(to_string(block)) + "." + field + " " + k.describe();
}

const Calibration& Calibration::defaults() {
  static const Calibration kDefaults = build_defaults();
  return kDefaults;
}

void Calibration::merge(const CalibrationEntry& entry, const std::string& where) {
  const BlockSchema& sc = schema(entry.block);
  for (const auto& [name, value] : entry.values) {
    if (std::find(sc.value_fields.begin(), sc.value_fields.end(), name) == sc.value_fields.end()) {
      throw CalibrationLoadError(where + "." + name + ": unknown key");
    }
    const bool may_be_negative = entry.block == Block::kSdlLinear;
    if (!may_be_negative && value < 0.0) {
      throw CalibrationLoadError(where + "." + name + ": must be non-negative (got " +
                                 fmt_number(value) + ")");
    }
  }
  if (entry.block == Block::kKpi && entry.key.strategy == Strategy::kSmMr &&
      (entry.values.count("delta_m_s") || entry.values.count("b_m_s"))) {
    throw CalibrationLoadError(where +
                               ": sm-mr migration duration equals its downtime; set delta_d_s/b_d_s");
  }
  if (entry.block == Block::kSmOverhead && entry.key.strategy == Strategy::kSdl) {
    throw CalibrationLoadError(where + ".strategy: sm_overhead applies to stateful strategies");
  }

  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const CalibrationEntry& e) {
    return e.block == entry.block && e.key == entry.key;
  });
  if (it != entries_.end()) {
    for (const auto& [name, value] : entry.values) it->values[name] = value;
    return;
  }
  for (const auto& name : sc.required_values) {
    if (!entry.values.count(name)) {
      throw CalibrationLoadError(where + "." + name + ": missing for new key " +
                                 entry.key.describe());
    }
  }
  entries_.push_back(entry);
  sort_entries();
}

void Calibration::sort_entries() {
  std::sort(entries_.begin(), entries_.end(),
            [](const CalibrationEntry& a, const CalibrationEntry& b) {
              return sort_tuple(a) < sort_tuple(b);
            });
}

bool Calibration::operator==(const Calibration& other) const { return entries_ == other.entries_; }

Calibration Calibration::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CalibrationLoadError(std::string("calibration: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CalibrationLoadError("calibration: top level must be an object");

  bool standalone = false;
  if (auto it = doc.find("base"); it != doc.end()) {
    if (!it->is_string()) throw CalibrationLoadError("base: expected \"defaults\" or \"none\"");
    const std::string base = it->get<std::string>();
    if (base == "none") {
      standalone = true;
    } else if (base != "defaults") {
      throw CalibrationLoadError("base: expected \"defaults\" or \"none\", got '" + base + "'");
    }
  }
  for (const auto& [name, value] : doc.items()) {
    if (name != "base" && name != "units" && !block_from_name(name)) {
      throw CalibrationLoadError(name + ": unknown key");
    }
  }

  Calibration cal = standalone ? Calibration{} : defaults();
  for (Block b : kAllBlocks) {
    const std::string name(to_string(b));
    auto it = doc.find(name);
    if (it == doc.end()) {
      if (standalone) throw CalibrationLoadError(name + ": missing mandatory block");
      continue;
    }
    if (!it->is_array()) throw CalibrationLoadError(name + ": expected an array of entries");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = name + "[" + std::to_string(i) + "]";
      cal.merge(parse_entry(b, (*it)[i], where), where);
    }
  }
  return cal;
}

Calibration Calibration::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CalibrationLoadError("cannot open calibration file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string Calibration::to_json() const {
  json doc = json::object();
  doc["base"] = "none";
  doc["units"] = {{"kpi", "seconds"},
                  {"sigma", "milliseconds per xApp"},
                  {"sdl_linear", "W, cores, GB"},
                  {"sm_overhead", "W, cores, GB"},
                  {"xapp_load", "W, cores, GB per xApp"},
                  {"server_idle", "W, cores, GB"}};
  for (Block b : kAllBlocks) doc[std::string(to_string(b))] = json::array();
  for (const auto& e : entries_) {
    json obj = key_to_json(e.key);
    for (const auto& [name, value] : e.values) obj[name] = value;
    doc[std::string(to_string(e.block))].push_back(std::move(obj));
  }
  return doc.dump(2);
}

const CalibrationEntry* Calibration::best_match(const CoefficientQuery& q) const {
  const CalibrationEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (e.block != q.block || e.key.metric != q.metric) continue;
    if (e.key.strategy && e.key.strategy != q.strategy) continue;
    if (e.key.class_id && e.key.class_id != q.class_id) continue;
    if (!key_field_matches(e.key.rho_mb, q.rho_mb) || !key_field_matches(e.key.nu_s, q.nu_s)) {
      continue;
    }
    if (!e.values.count(q.field)) continue;
    if (!best || e.key.specificity() > best->key.specificity()) best = &e;
  }
  return best;
}

double Calibration::lookup(const CoefficientQuery& query) const {
  CoefficientQuery q = query;
  // sm-mr migrates in a single stop-and-copy pass, so T_M == T_D.
  if (q.block == Block::kKpi && q.strategy == Strategy::kSmMr) {
    if (q.field == "delta_m_s") q.field = "delta_d_s";
    if (q.field == "b_m_s") q.field = "b_d_s";
  }
  if (q.block == Block::kKpi && q.strategy == Strategy::kSdl &&
      (q.field == "delta_d_s" || q.field == "b_d_s")) {
    return 0.0;
  }
  const CalibrationEntry* e = best_match(q);
  if (!e) throw CalibrationLookupError("no calibration entry for " + query.describe());
  return e->values.at(q.field);
}

KpiCoeffs Calibration::kpi(Strategy strategy, const Regime& regime) const {
  const auto get = [&](const char* field) {
    CoefficientQuery q{Block::kKpi, field, strategy, std::nullopt, std::nullopt,
                       regime.rho_bytes / kBytesPerMegabyte, regime.nu_s};
    return lookup(q);
  };
  KpiCoeffs c;
  c.delta_d = get("delta_d_s");
  c.b_d = get("b_d_s");
  c.delta_m = get("delta_m_s");
  c.b_m = get("b_m_s");
  return c;
}

double Calibration::sigma_s(const std::string& class_id, const Regime& regime) const {
  CoefficientQuery q{Block::kSigma, "sigma_ms", std::nullopt, class_id, std::nullopt,
                     regime.rho_bytes / kBytesPerMegabyte, regime.nu_s};
  return lookup(q) / 1000.0;
}

LinearCoeffs Calibration::sdl_linear(const std::string& class_id, Metric metric,
                                     const Regime& regime) const {
  CoefficientQuery q{Block::kSdlLinear, "delta", std::nullopt, class_id, metric,
                     regime.rho_bytes / kBytesPerMegabyte, regime.nu_s};
  LinearCoeffs c;
  c.slope = lookup(q);
  q.field = "b";
  c.intercept = lookup(q);
  return c;
}

double Calibration::sm_overhead(Strategy strategy, Metric metric) const {
  return lookup(CoefficientQuery{Block::kSmOverhead, "b", strategy, std::nullopt, metric,
                                 std::nullopt, std::nullopt});
}

double Calibration::xapp_load(const std::string& class_id, Metric metric) const {
  return lookup(CoefficientQuery{Block::kXappLoad, "p", std::nullopt, class_id, metric,
                                 std::nullopt, std::nullopt});
}

double Calibration::server_idle(Metric metric) const {
  return lookup(CoefficientQuery{Block::kServerIdle, "q", std::nullopt, std::nullopt, metric,
                                 std::nullopt, std::nullopt});
}

LinearFit fit_linear(const MeasurementSeries& series) {
  const auto& x = series.predictor;
  const auto& y = series.response;
  if (x.size() != y.size()) {
    throw DegenerateFitError("series '" + series.label + "': predictor/response lengths differ");
  }
  std::set<double> distinct(x.begin(), x.end());
  if (distinct.size() < 2) {
    throw DegenerateFitError("series '" + series.label + "': need at least two distinct predictors");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

MeasurementSeries read_measurements_csv(const std::string& path, std::string label) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open measurements file '" + path + "'");
  MeasurementSeries series;
  series.label = std::move(label);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != "predictor,response") {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'predictor,response'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected two columns");
    }
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma);
      const std::string b = line.substr(comma + 1);
      const double px = std::stod(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
      const double py = std::stod(b, &used);
      if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(b);
      series.predictor.push_back(px);
      series.response.push_back(py);
    } catch (const std::logic_error&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric value");
    }
  }
  if (!header_seen) throw ParseError(path + ": empty measurements file");
  return series;
}

}  // namespace ricmig
