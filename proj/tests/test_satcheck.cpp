// Copyright 2026 The aoracle Authors
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

#include <cmath>

#include "aoracle/gp.hpp"
#include "aoracle/rng.hpp"
#include "aoracle/satcheck.hpp"

namespace {

using namespace aoracle;

InputSchema x1x2() { return InputSchema({{"x1", 0, 100}, {"x2", 0, 100}}); }

TEST(Sat, DisjointHalfLines) {
  InputSchema s({{"x", -1, 1}});
  auto r = check_conjunction(parse_condition("x > 0", s), parse_condition("x < 0", s), s);
  EXPECT_EQ(r.status, SatStatus::kUnsat);
  EXPECT_FALSE(r.witness);
}

TEST(Sat, SharedBoundaryWithStrictSide) {
  InputSchema s = x1x2();
  auto r = check_conjunction(parse_condition("x1 > 80", s),
                             parse_condition("x2 > 50 && x1 <= 80", s), s);
  EXPECT_EQ(r.status, SatStatus::kUnsat);
  r = check_conjunction(parse_condition("x1 >= 80", s), parse_condition("x1 <= 80", s), s);
  EXPECT_NE(r.status, SatStatus::kUnsat);
}

TEST(Sat, WitnessIsGenuine) {
  InputSchema s = x1x2();
  Condition a = parse_condition("x2 < 43", s);
  Condition b = parse_condition("x1 + x2 < 10", s);
  auto r = check_conjunction(a, b, s);
  ASSERT_EQ(r.status, SatStatus::kSat);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(evaluate(a, *r.witness));
  EXPECT_TRUE(evaluate(b, *r.witness));
}

TEST(Sat, SelfCancellingProductNeverSat) {
  InputSchema s({{"x", 0, 1}});
  Condition a = parse_condition("x = 0.123456789", s);
  Condition b = parse_condition("x * x - x * x > 0", s);
  auto r = check_conjunction(a, b, s);
  EXPECT_NE(r.status, SatStatus::kSat);
  // No witness on a dense scan either.
  for (int i = 0; i <= 100000; ++i) {
    TestInput t{{i / 100000.0}};
    ASSERT_FALSE(evaluate(a, t) && evaluate(b, t));
  }
}

TEST(Sat, DisjunctionNeedsEveryBranchRefuted) {
  InputSchema s = x1x2();
  Condition a = parse_condition("x1 < 10 || x1 > 90", s);
  EXPECT_EQ(check_conjunction(a, parse_condition("x1 > 95", s), s).status, SatStatus::kSat);
  EXPECT_EQ(check_conjunction(a, parse_condition("x1 > 20 && x1 < 80", s), s).status,
            SatStatus::kUnsat);
}

TEST(Sat, ProductRefutedByPropagation) {
  InputSchema s = x1x2();
  auto r = check_conjunction(parse_condition("x1 * x2 > 900", s),
                             parse_condition("x1 + x2 < 10", s), s);
  EXPECT_EQ(r.status, SatStatus::kUnsat);
}

TEST(Sat, ThinRegionFoundOrUnknownNeverUnsat) {
  InputSchema s = x1x2();
  auto r = check_conjunction(parse_condition("x1 - 33.3333 = 0", s),
                             parse_condition("x2 - 66.6666 = 0", s), s);
  EXPECT_NE(r.status, SatStatus::kUnsat);
}

TEST(Interval, EnclosureContainsSamples) {
  InputSchema s({{"a", -2, 3}, {"b", 0.5, 4}});
  GrowSpec spec{&s, 5, -3, 3};
  Rng rng(5);
  Box box = schema_box(s);
  for (int i = 0; i < 500; ++i) {
    Condition c = grow_random(spec, rng);
    for (const auto& branch : dnf(c.root)) {
      const Node& exp = branch.front()->children.front();
      Interval iv = enclose(exp, box);
      for (int k = 0; k < 50; ++k) {
        double v[2] = {uniform(rng, -2, 3), uniform(rng, 0.5, 4)};
        auto val = evaluate_expression(exp, v);
        if (!val || !std::isfinite(*val)) continue;
        ASSERT_LE(iv.lo, *val);
        ASSERT_GE(iv.hi, *val);
      }
    }
  }
}

// Soundness of Unsat: a dense scan never finds a point satisfying a pair
// the checker refuted.
TEST(SatProperty, UnsatIsSound) {
  InputSchema s({{"a", -1, 1}, {"b", -1, 1}});
  GrowSpec spec{&s, 4, -1, 1};
  Rng rng(21);
  SatBudget budget;
  budget.samples = 256;
  SatChecker checker(s, budget);
  int refuted = 0;
  for (int i = 0; i < 300 && refuted < 20; ++i) {
    Condition c1 = grow_random(spec, rng);
    Condition c2 = grow_random(spec, rng);
    if (checker.check(c1, c2).status != SatStatus::kUnsat) continue;
    ++refuted;
    const int n = 1000;
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        TestInput t{{-1 + 2.0 * p / n, -1 + 2.0 * q / n}};
        ASSERT_FALSE(evaluate(c1, t) && evaluate(c2, t))
            << print_condition(c1, s) << " / " << print_condition(c2, s);
      }
    }
  }
  EXPECT_GT(refuted, 0);
}

// Raising the budget may only resolve Unknown.
TEST(SatProperty, BudgetMonotonicity) {
  InputSchema s({{"a", -1, 1}, {"b", -1, 1}, {"c", 0, 2}});
  GrowSpec spec{&s, 4, -1, 1};
  Rng rng(4);
  SatBudget small;
  small.samples = 64;
  small.grid_per_dim = 2;
  small.refute_nodes = 4;
  SatBudget large;
  large.samples = 8192;
  large.grid_per_dim = 7;
  large.refute_nodes = 256;
  SatChecker lo(s, small), hi(s, large);
  for (int i = 0; i < 400; ++i) {
    Condition c1 = grow_random(spec, rng);
    Condition c2 = grow_random(spec, rng);
    SatStatus a = lo.check(c1, c2).status;
    SatStatus b = hi.check(c1, c2).status;
    if (a != SatStatus::kUnknown) {
      ASSERT_EQ(a, b);
    }
  }
}

TEST(Sat, MaskedCheckMatchesPlainCheck) {
  InputSchema s = x1x2();
  SatChecker checker(s);
  Condition a = parse_condition("x1 > 50 && x2 < 20", s);
  Condition b = parse_condition("x2 < 43", s);
  EXPECT_EQ(checker.check(a, checker.mask(a), b, checker.mask(b)).status,
            checker.check(a, b).status);
}

}  // namespace
