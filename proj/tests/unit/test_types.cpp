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

#include "helpers.hpp"
#include "ricmig/errors.hpp"
#include "ricmig/types.hpp"

using namespace ricmig;
namespace ts = testing_support;

TEST(Types, StrategyNamesRoundTrip) {
  for (Strategy s : {Strategy::kSdl, Strategy::kSmMr, Strategy::kSmMd}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_EQ(parse_strategy("SM_MR"), Strategy::kSmMr);
  EXPECT_FALSE(parse_strategy("sm"));
}

TEST(Types, MetricNames) {
  EXPECT_EQ(parse_metric("E"), Metric::kEnergy);
  EXPECT_EQ(parse_metric("disk"), Metric::kDisk);
  EXPECT_FALSE(parse_metric("gpu"));
  EXPECT_EQ(metric_of(Resource::kMem), Metric::kMem);
}

TEST(Types, ReferenceClassesMatchTheWorkloadTable) {
  const auto classes = reference_classes();
  ASSERT_EQ(classes.size(), 4U);
  EXPECT_EQ(classes[0].id, "A");
  EXPECT_DOUBLE_EQ(classes[0].msg_size_bytes, 100.0);
  EXPECT_DOUBLE_EQ(classes[0].msg_period_s, 1.0);
  EXPECT_DOUBLE_EQ(classes[1].msg_period_s, 0.1);
  EXPECT_DOUBLE_EQ(classes[2].msg_size_bytes, 100.0e3);
  EXPECT_DOUBLE_EQ(classes[3].msg_size_bytes, 100.0e3);
  EXPECT_DOUBLE_EQ(classes[3].msg_period_s, 0.1);
}

TEST(Types, TotalsIncludeStagedDeployments) {
  ClusterState st = ts::class_a_state({3, 2, 1});
  st.pending_deploys[0] = 4;
  EXPECT_EQ(st.hosted_totals(), std::vector<int>{6});
  EXPECT_EQ(st.slot_totals(), std::vector<int>{10});
  EXPECT_EQ(st.total_xapps(), 10);
}

TEST(Types, CheckRejectsInconsistentStates) {
  ClusterState st = ts::class_a_state({1, 1});
  EXPECT_NO_THROW(st.check());

  ClusterState off = st;
  off.initial_active[1] = false;
  EXPECT_THROW(off.check(), StateError);

  ClusterState no_mandatory = st;
  no_mandatory.servers[0].optional = true;
  EXPECT_THROW(no_mandatory.check(), StateError);

  ClusterState negative = st;
  negative.initial_counts[0][0] = -1;
  EXPECT_THROW(negative.check(), StateError);

  ClusterState too_many = st;
  too_many.pending_undeploys[0] = 3;
  EXPECT_THROW(too_many.check(), StateError);

  ClusterState duplicate = st;
  duplicate.servers[1].id = duplicate.servers[0].id;
  EXPECT_THROW(duplicate.check(), StateError);
}
