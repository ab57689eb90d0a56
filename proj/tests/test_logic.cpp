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

#include "aoracle/error.hpp"
#include "aoracle/gp.hpp"
#include "aoracle/logic.hpp"
#include "aoracle/rng.hpp"

namespace {

using namespace aoracle;

std::string rewrite(const std::string& text, const InputSchema& s) {
  return print_logic(to_logic(parse_condition(text, s), s), s);
}

TEST(Signals, PiecewiseConstantValue) {
  Signal th{"th", {0.1, 0.2, 0.3}};
  EXPECT_DOUBLE_EQ(th.value_at(0, 500), 0.1);
  EXPECT_DOUBLE_EQ(th.value_at(249.9, 500), 0.1);
  EXPECT_DOUBLE_EQ(th.value_at(250, 500), 0.2);
  EXPECT_DOUBLE_EQ(th.value_at(500, 500), 0.3);
  EXPECT_DOUBLE_EQ(grid_time(500, 3, 1), 250.0);
  EXPECT_EQ(slot_of(499, 500, 3), 1);
  EXPECT_EQ(slot_of(500, 500, 3), 2);
}

TEST(Signals, EncodeDecode) {
  InputSchema s({}, {{"th", 3, 0, 1}}, 500);
  TestInput in = encode_signals({{"th", {0.1, 0.2, 0.3}}}, s);
  EXPECT_EQ(in.values, (std::vector<double>{0.1, 0.2, 0.3}));
  auto back = decode_signals(in, s);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].values, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_THROW(encode_signals({{"th", {0.1, 0.2}}}, s), Error);
}

TEST(Rewrite, MergesTwoSignalsPerSlot) {
  InputSchema s({}, {{"k", 6, -100, 100}, {"p", 6, -100, 100}}, 500);
  EXPECT_EQ(rewrite("(c_k_0 - c_p_0 <= 20) && (c_k_1 + c_p_1 < 0)", s),
            "(forall t in [0,100): k(t) - p(t) <= 20) && (forall t in [100,200): k(t) + p(t) < 0)");
}

TEST(Rewrite, GloballyOverConsecutiveSlots) {
  InputSchema s({}, {{"th", 4, 0, 200}}, 500);
  EXPECT_EQ(rewrite("c_th_0 < 100 && c_th_1 < 100 && c_th_2 < 100", s),
            "(forall t in [0,500): th(t) < 100)");
}

TEST(Rewrite, ChainOfTwoSignals) {
  InputSchema s({}, {{"p", 11, 0, 1}, {"th", 6, 0, 1}}, 1000);
  EXPECT_EQ(rewrite("c_p_0 <= 0.7 && c_p_1 <= 0.7 && c_p_2 <= 0.7 && c_p_3 <= 0.7 && "
                    "c_p_4 <= 0.7 && c_th_0 <= 0.2",
                    s),
            "(forall t in [0,500): p(t) <= 0.7) && (forall t in [0,200): th(t) <= 0.2)");
}

TEST(Rewrite, LastSlotIsClosed) {
  InputSchema s({}, {{"th", 3, 0, 200}}, 500);
  EXPECT_EQ(rewrite("c_th_0 < 100 && c_th_1 < 100 && c_th_2 < 100", s),
            "(forall t in [0,500]: th(t) < 100)");
}

TEST(Rewrite, FromLogicExpandsInterval) {
  InputSchema s({}, {{"th", 3, 0, 200}}, 500);
  Condition c = parse_condition("c_th_0 < 100 && c_th_1 < 100 && c_th_2 < 100", s);
  QuantifiedFormula f = to_logic(c, s);
  ASSERT_EQ(f.disjuncts.size(), 1u);
  ASSERT_EQ(f.disjuncts[0].size(), 1u);
  EXPECT_EQ(f.disjuncts[0][0].interval, (TimeInterval{0, 500, true}));
  EXPECT_EQ(from_logic(f, s), c);
}

TEST(Rewrite, RoundTripOfMergedSignals) {
  InputSchema s({}, {{"k", 6, -100, 100}, {"p", 6, -100, 100}}, 500);
  Condition c = parse_condition("(c_k_0 - c_p_0 <= 20) && (c_k_1 + c_p_1 < 0)", s);
  EXPECT_EQ(from_logic(to_logic(c, s), s), c);
}

TEST(Rewrite, MisalignedIntervalRejected) {
  InputSchema s({}, {{"p", 6, 0, 1}}, 500);
  QuantifiedFormula f = to_logic(parse_condition("c_p_0 <= 0.5", s), s);
  f.disjuncts[0][0].interval = TimeInterval{0, 150, false};
  try {
    from_logic(f, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridMisaligned);
  }
}

TEST(Rewrite, PlainVariableRejected) {
  InputSchema s({{"mode", 0, 3}}, {{"th", 3, 0, 1}}, 500);
  try {
    to_logic(parse_condition("mode < 1 && c_th_1 > 0.5", s), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonSignalVariable);
  }
}

TEST(Rewrite, MixedSamplingRejected) {
  InputSchema s({}, {{"u", 3, 0, 1}, {"v", 5, 0, 1}}, 100);
  try {
    to_logic(parse_condition("c_u_1 - c_v_1 > 0", s), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonUniformSampling);
  }
}

TEST(Rewrite, ConstantOnlyTermHasNoQuantifier) {
  InputSchema s({}, {{"th", 3, 0, 1}}, 500);
  QuantifiedFormula f = to_logic(parse_condition("c_th_1 > 0.5 && 1 > 0", s), s);
  ASSERT_EQ(f.disjuncts[0].size(), 2u);
  int bare = 0;
  for (const auto& t : f.disjuncts[0]) bare += !t.interval;
  EXPECT_EQ(bare, 1);
}

// Random signal conditions: the rewritten formula, evaluated both directly
// on the signals and through from_logic, must agree with the original.
TEST(RewriteProperty, EquivalenceOnRandomConditions) {
  InputSchema s({}, {{"u", 5, -10, 10}, {"v", 5, 0, 4}, {"w", 5, -1, 1}}, 120);
  GrowSpec spec{&s, 5, -10, 10};
  Rng rng(11);
  int violations = 0;
  for (int i = 0; i < 300; ++i) {
    Condition c = grow_random(spec, rng);
    QuantifiedFormula f = to_logic(c, s);
    Condition back = from_logic(f, s);
    for (int j = 0; j < 50; ++j) {
      TestInput in;
      for (const auto& v : s.variables()) in.values.push_back(uniform(rng, v.lower, v.upper));
      bool want = evaluate(c, in);
      violations += evaluate(back, in) != want;
      violations += evaluate_logic(f, s, in) != want;
    }
  }
  EXPECT_EQ(violations, 0);
}

}  // namespace
