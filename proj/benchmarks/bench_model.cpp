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

#include <benchmark/benchmark.h>

#include <vector>

#include "ricmig/calibration.hpp"
#include "ricmig/model.hpp"

namespace {

using namespace ricmig;

void BM_ServerEnergy(benchmark::State& state) {
  const Calibration& cal = Calibration::defaults();
  const auto classes = reference_classes();
  ScenarioParams params;
  params.strategy = Strategy::kSmMd;
  const std::vector<int> totals = {40, 30, 20, 10};
  ServerSlice slice;
  slice.initial = {10, 8, 5, 3};
  slice.outgoing = {4, 2, 1, 0};
  slice.incoming_new = {1, 0, 2, 0};
  slice.hosted = {7, 6, 6, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(server_energy(slice, classes, totals, 4, params, cal));
  }
}
BENCHMARK(BM_ServerEnergy);

void BM_DefragDowntime(benchmark::State& state) {
  const Calibration& cal = Calibration::defaults();
  const auto classes = reference_classes();
  const std::vector<int> counts = {50, 20, 30, 30};
  const Regime regime;
  for (auto _ : state) {
    benchmark::DoNotOptimize(defrag_downtime(classes, counts, cal, regime));
  }
}
BENCHMARK(BM_DefragDowntime);

void BM_CalibrationLookup(benchmark::State& state) {
  const Calibration& cal = Calibration::defaults();
  const Regime regime{10.0 * kBytesPerMegabyte, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cal.kpi(Strategy::kSmMd, regime));
  }
}
BENCHMARK(BM_CalibrationLookup);

}  // namespace
