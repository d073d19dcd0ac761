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

#ifndef RICMIG_CALIBRATION_HPP
#define RICMIG_CALIBRATION_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ricmig/types.hpp"

namespace ricmig {

/// Coefficient families of a calibration document.
enum class Block { kKpi, kSigma, kSdlLinear, kSmOverhead, kXappLoad, kServerIdle };

std::string_view to_string(Block b);

/// Key of one calibration entry. An unset field is a wildcard; metric is a
/// selector and never wildcarded. State size is kept in MB and sigma in ms,
/// the units the document is written in, so that serialization is exact.
struct EntryKey {
  std::optional<Strategy> strategy;
  std::optional<std::string> class_id;
  std::optional<Metric> metric;
  std::optional<double> rho_mb;
  std::optional<double> nu_s;

  /// Specificity used for wildcard precedence: strategy > class > rho > nu.
  int specificity() const;
  std::string describe() const;
  bool operator==(const EntryKey&) const = default;
};

struct CalibrationEntry {
  Block block = Block::kKpi;
  EntryKey key;
  std::map<std::string, double> values;

  bool operator==(const CalibrationEntry&) const = default;
};

/// A fully specified coefficient request.
struct CoefficientQuery {
  Block block = Block::kKpi;
  std::string field;
  std::optional<Strategy> strategy;
  std::optional<std::string> class_id;
  std::optional<Metric> metric;
  std::optional<double> rho_mb;
  std::optional<double> nu_s;

  std::string describe() const;
};

struct LinearCoeffs {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Affine KPI coefficients of a strategy, in seconds per xApp and seconds.
struct KpiCoeffs {
  double delta_d = 0.0;
  double b_d = 0.0;
  double delta_m = 0.0;
  double b_m = 0.0;
};

/// Immutable set of fitted coefficients that parameterizes every model.
///
/// Entries are matched most-specific-first (see EntryKey::specificity) and a
/// request that nothing covers raises CalibrationLookupError; values are never
/// interpolated between regimes.
class Calibration {
 public:
  /// The measured tables shipped with the library.
  static const Calibration& defaults();

  /// Parses a JSON calibration document. Unless it sets "base": "none" the
  /// document is merged over defaults() field by field.
  static Calibration from_json(std::string_view text);
  static Calibration from_file(const std::string& path);
  /// Full standalone document ("base": "none") that re-loads to *this.
  std::string to_json() const;

  /// Generic lookup; throws CalibrationLookupError echoing the query.
  double lookup(const CoefficientQuery& query) const;

  KpiCoeffs kpi(Strategy strategy, const Regime& regime) const;
  /// Defrag slope sigma_k in seconds per xApp.
  double sigma_s(const std::string& class_id, const Regime& regime) const;
  LinearCoeffs sdl_linear(const std::string& class_id, Metric metric, const Regime& regime) const;
  /// b^tau of a stateful strategy: CPU cores, GB, or watts for Metric::kEnergy.
  double sm_overhead(Strategy strategy, Metric metric) const;
  /// Per-xApp load slope p.
  double xapp_load(const std::string& class_id, Metric metric) const;
  /// Idle consumption q of an active server.
  double server_idle(Metric metric) const;

  const std::vector<CalibrationEntry>& entries() const { return entries_; }
  bool operator==(const Calibration& other) const;

  /// Inserts or field-merges an entry, validating invariants. Throws CalibrationLoadError.
  void merge(const CalibrationEntry& entry, const std::string& where);

 private:
  const CalibrationEntry* best_match(const CoefficientQuery& query) const;
  void sort_entries();

  std::vector<CalibrationEntry> entries_;
};

/// Paired measurements feeding one affine coefficient pair.
struct MeasurementSeries {
  std::vector<double> predictor;
  std::vector<double> response;
  std::string label;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// Ordinary least squares. Throws DegenerateFitError with fewer than two
/// distinct predictors or mismatched lengths.
LinearFit fit_linear(const MeasurementSeries& series);

/// Reads a two-column CSV with header "predictor,response". Throws ParseError.
MeasurementSeries read_measurements_csv(const std::string& path, std::string label);

}  // namespace ricmig

#endif  // RICMIG_CALIBRATION_HPP
