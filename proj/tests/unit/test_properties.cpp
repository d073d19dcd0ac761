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

#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

constexpr std::uint64_t kSeeds[] = {1, 17, 4242};

void expect_holds(props::Failure (*check)(std::uint64_t)) {
  for (std::uint64_t seed : kSeeds) {
    const props::Failure f = check(seed);
    EXPECT_FALSE(f.has_value()) << "seed " << seed << ": " << f.value_or("");
  }
}

}  // namespace

TEST(Properties, SmMrDowntimeEqualsDuration) { expect_holds(props::sm_mr_downtime_is_duration); }
TEST(Properties, SdlDowntimeIsZero) { expect_holds(props::sdl_downtime_is_zero); }
TEST(Properties, StrategyOrdering) { expect_holds(props::strategy_ordering); }
TEST(Properties, KpisAreAffine) { expect_holds(props::kpis_are_affine); }
TEST(Properties, DefragIsMonotone) { expect_holds(props::defrag_is_monotone); }
TEST(Properties, OutputsAreNonNegative) { expect_holds(props::outputs_are_non_negative); }
TEST(Properties, EnergyIsAdditive) { expect_holds(props::energy_is_additive); }
TEST(Properties, ConservationAfterSolve) { expect_holds(props::conservation_after_solve); }
TEST(Properties, MutationsAreCaught) { expect_holds(props::mutations_are_caught); }
TEST(Properties, SolversAreDeterministic) { expect_holds(props::solvers_are_deterministic); }
TEST(Properties, BnbTraceIsMonotone) { expect_holds(props::bnb_trace_is_monotone); }
