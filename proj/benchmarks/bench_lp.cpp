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

#include <random>

#include "ricmig/lp.hpp"

namespace {

using namespace ricmig;

// Random feasible packing LP: maximize value under capacity rows.
lp::Problem random_lp(int vars, int rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.1, 5.0);
  lp::Problem p;
  for (int j = 0; j < vars; ++j) p.add_variable(0.0, 10.0, -coef(rng));
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < vars; ++j) row.emplace_back(j, coef(rng));
    p.add_row(std::move(row), lp::Sense::kLessEqual, 10.0 * vars);
  }
  return p;
}

void BM_DenseSimplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lp::Problem p = random_lp(n, n / 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.solve());
  }
}
BENCHMARK(BM_DenseSimplex)->Arg(16)->Arg(64)->Arg(128);

}  // namespace
