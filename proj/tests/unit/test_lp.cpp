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

#include <random>

#include "ricmig/lp.hpp"

using namespace ricmig::lp;

TEST(Lp, TextbookMinimum) {
  // min -3x - 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  x=2, y=6, obj=-36
  Problem p;
  const int x = p.add_variable(0, kInf, -3);
  const int y = p.add_variable(0, kInf, -5);
  p.add_row({{x, 1}}, Sense::kLessEqual, 4);
  p.add_row({{y, 2}}, Sense::kLessEqual, 12);
  p.add_row({{x, 3}, {y, 2}}, Sense::kLessEqual, 18);
  const Result r = p.solve();
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.objective, -36.0, 1e-9);
  EXPECT_NEAR(r.x[x], 2.0, 1e-9);
  EXPECT_NEAR(r.x[y], 6.0, 1e-9);
}

TEST(Lp, EqualityAndGreaterRows) {
  // min x + 2y  s.t. x + y = 10, x >= 3 via row, y >= 1 via bound, x <= 6 via bound
  Problem p;
  const int x = p.add_variable(0, 6, 1);
  const int y = p.add_variable(1, kInf, 2);
  p.add_row({{x, 1}, {y, 1}}, Sense::kEqual, 10);
  p.add_row({{x, 1}}, Sense::kGreaterEqual, 3);
  const Result r = p.solve();
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.x[x], 6.0, 1e-9);
  EXPECT_NEAR(r.x[y], 4.0, 1e-9);
  EXPECT_NEAR(r.objective, 14.0, 1e-9);
}

TEST(Lp, NonZeroLowerBounds) {
  Problem p;
  const int x = p.add_variable(2, 5, 1);
  const int y = p.add_variable(-3, 3, -1);
  p.add_row({{x, 1}, {y, -1}}, Sense::kGreaterEqual, 0);
  const Result r = p.solve();
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.objective, 2.0 - 2.0, 1e-9);
}

TEST(Lp, Infeasible) {
  Problem p;
  const int x = p.add_variable(0, kInf, 1);
  p.add_row({{x, 1}}, Sense::kLessEqual, 1);
  p.add_row({{x, 1}}, Sense::kGreaterEqual, 2);
  EXPECT_EQ(p.solve().status, Status::kInfeasible);
}

TEST(Lp, Unbounded) {
  Problem p;
  const int x = p.add_variable(0, kInf, -1);
  const int y = p.add_variable(0, kInf, 0);
  p.add_row({{x, 1}, {y, -1}}, Sense::kLessEqual, 1);
  EXPECT_EQ(p.solve().status, Status::kUnbounded);
}

TEST(Lp, NoRows) {
  Problem p;
  p.add_variable(1, 4, 2);
  p.add_variable(0, 3, -1);
  const Result r = p.solve();
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.objective, 2.0 - 3.0, 1e-9);
}

// Two-variable LPs in a box, checked against enumeration of all pairwise
// intersections of the constraint lines and box edges.
TEST(Lp, RandomPlanarAgainstVertexEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> rhs(1.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    struct Line {
      double a, b, c;  // a x + b y <= c
    };
    std::vector<Line> lines;
    const int nrows = 1 + trial % 4;
    for (int i = 0; i < nrows; ++i) lines.push_back({coef(rng), coef(rng), rhs(rng)});
    const double cx = coef(rng);
    const double cy = coef(rng);

    Problem p;
    const int x = p.add_variable(0, 10, cx);
    const int y = p.add_variable(0, 10, cy);
    for (const Line& l : lines) p.add_row({{x, l.a}, {y, l.b}}, Sense::kLessEqual, l.c);
    const Result r = p.solve();

    std::vector<Line> all = lines;
    all.push_back({1, 0, 10});
    all.push_back({-1, 0, 0});
    all.push_back({0, 1, 10});
    all.push_back({0, -1, 0});
    double best = kInf;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const double det = all[i].a * all[j].b - all[j].a * all[i].b;
        if (std::fabs(det) < 1e-12) continue;
        const double vx = (all[i].c * all[j].b - all[j].c * all[i].b) / det;
        const double vy = (all[i].a * all[j].c - all[j].a * all[i].c) / det;
        bool ok = true;
        for (const Line& l : all) ok = ok && l.a * vx + l.b * vy <= l.c + 1e-9;
        if (ok) best = std::min(best, cx * vx + cy * vy);
      }
    }
    if (best == kInf) {
      EXPECT_EQ(r.status, Status::kInfeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(r.status, Status::kOptimal) << "trial " << trial;
      EXPECT_NEAR(r.objective, best, 1e-7) << "trial " << trial;
    }
  }
}
