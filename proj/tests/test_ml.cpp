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

#include <algorithm>

#include "aoracle/data.hpp"
#include "aoracle/error.hpp"
#include "aoracle/ml.hpp"
#include "aoracle/sut.hpp"

namespace {

using namespace aoracle;

LabeledSet one_feature() {
  LabeledSet ts{InputSchema({{"x", 0, 10}}), {}, "sep"};
  for (double x : {0.5, 1.0, 2.0, 3.5, 4.5, 5.5, 6.0, 8.0, 9.5}) {
    ts.rows.push_back({{{x}}, x < 5 ? Verdict::kPass : Verdict::kFail});
  }
  return ts;
}

LabeledSet from_scenario(const char* name, std::size_t n, std::uint64_t seed) {
  auto sut = *find_scenario(name);
  return truth_labels(sut, adaptive_random_generate(sut.schema(), n, 10, seed));
}

double precision(const Rule& r, const LabeledSet& ts) {
  std::size_t hit = 0, ok = 0;
  for (const auto& row : ts.rows) {
    if (!evaluate(r.condition, row.input)) continue;
    ++hit;
    ok += row.verdict == r.verdict;
  }
  return hit ? static_cast<double>(ok) / static_cast<double>(hit) : 0.0;
}

TEST(Features, TableAndValidation) {
  InputSchema s({{"x1", 0, 100}, {"x2", 0, 100}});
  FeatureSpec spec = make_features(s, {{"s", "x1 + x2"}});
  FeatureTable t(s, spec);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.name(2), "s");
  EXPECT_DOUBLE_EQ(t.value(2, {{30, 12}}), 42.0);
  EXPECT_THROW(make_features(s, {{"x1", "x2"}}), Error);
  EXPECT_THROW(make_features(s, {{"s", "x1"}, {"s", "x2"}}), Error);
  EXPECT_THROW(make_features(s, {{"s", "x3"}}), Error);
}

TEST(Features, TermsConditionMatchesTermsHold) {
  InputSchema s({{"x1", 0, 100}, {"x2", 0, 100}});
  FeatureTable t(s, make_features(s, {{"s", "x1 + x2"}, {"r", "x1 / x2"}}));
  std::vector<FeatureTerm> terms = {{2, RelOp::kGt, 50}, {3, RelOp::kLe, 1.5}, {0, RelOp::kLe, 70}};
  Condition c = terms_condition(t, terms);
  for (double a = 0; a <= 100; a += 7) {
    for (double b = 0; b <= 100; b += 9) {
      TestInput in{{a, b}};
      ASSERT_EQ(evaluate(c, in), terms_hold(t, terms, in));
    }
  }
  EXPECT_EQ(terms_condition(t, {}), tautology());
}

TEST(Tree, SeparableOneFeature) {
  LabeledSet ts = one_feature();
  RuleModel m = fit_decision_tree(ts, {});
  ASSERT_EQ(m.rules.size(), 2u);
  for (const auto& r : m.rules) {
    EXPECT_DOUBLE_EQ(r.confidence, 1.0);
    ASSERT_EQ(r.terms.size(), 1u);
    EXPECT_GE(r.terms[0].threshold, 4.5);
    EXPECT_LT(r.terms[0].threshold, 5.5);
  }
  for (const auto& row : ts.rows) EXPECT_EQ(model_predict(m, row.input), row.verdict);
}

TEST(Tree, PlantedSumThreshold) {
  LabeledSet ts = from_scenario("linear-sum", 200, 1);
  RuleModel m = fit_decision_tree(ts, make_features(ts.schema, {{"s", "x1 + x2"}}));
  auto it = std::find_if(m.rules.begin(), m.rules.end(), [](const Rule& r) {
    return r.verdict == Verdict::kFail && r.terms.size() == 1 && r.terms[0].feature == 2;
  });
  ASSERT_NE(it, m.rules.end());
  EXPECT_EQ(it->terms[0].op, RelOp::kGt);
  EXPECT_NEAR(it->terms[0].threshold, 50.0, 2.0);
  EXPECT_DOUBLE_EQ(it->confidence, 1.0);
}

TEST(Tree, PureDataset) {
  LabeledSet ts = one_feature();
  std::erase_if(ts.rows, [](const LabeledRow& r) { return r.verdict == Verdict::kFail; });
  RuleModel m = fit_decision_tree(ts, {});
  ASSERT_EQ(m.rules.size(), 1u);
  EXPECT_EQ(m.rules[0].condition, tautology());
  EXPECT_EQ(m.rules[0].verdict, Verdict::kPass);
  EXPECT_DOUBLE_EQ(m.rules[0].confidence, 1.0);
}

TEST(Tree, ConfidenceIsLeafPurity) {
  LabeledSet ts = from_scenario("two-region", 150, 2);
  TreeParams p;
  p.max_depth = 2;
  RuleModel m = fit_decision_tree(ts, {}, p);
  for (const auto& r : m.rules) EXPECT_DOUBLE_EQ(r.confidence, precision(r, ts));
}

TEST(Rules, SeparableOneFeature) {
  LabeledSet ts = one_feature();
  RuleModel m = fit_decision_rules(ts, {});
  ASSERT_EQ(m.rules.size(), 2u);
  EXPECT_EQ(m.rules[0].verdict, Verdict::kFail);
  EXPECT_EQ(m.rules[1].verdict, Verdict::kPass);
  for (const auto& r : m.rules) EXPECT_DOUBLE_EQ(precision(r, ts), 1.0);
}

TEST(Rules, PlantedConjunction) {
  LabeledSet ts{InputSchema({{"x1", 0, 100}, {"x2", 0, 100}}), {}, "box"};
  for (auto in : adaptive_random_generate(ts.schema, 300, 10, 3)) {
    bool fail = in.values[0] > 60 && in.values[1] > 60;
    ts.rows.push_back({in, fail ? Verdict::kFail : Verdict::kPass});
  }
  RuleParams p;
  RuleModel m = fit_decision_rules(ts, {}, p);
  auto it = std::find_if(m.rules.begin(), m.rules.end(),
                         [](const Rule& r) { return r.verdict == Verdict::kFail; });
  ASSERT_NE(it, m.rules.end());
  EXPECT_LE(it->terms.size(), static_cast<std::size_t>(p.max_terms));
  EXPECT_GE(precision(*it, ts), p.min_precision);
  EXPECT_DOUBLE_EQ(it->confidence, precision(*it, ts));
}

TEST(Rules, CoverageAboveSetSize) {
  LabeledSet ts = one_feature();
  RuleParams p;
  p.min_coverage = ts.size() + 1;
  EXPECT_TRUE(fit_decision_rules(ts, {}, p).rules.empty());
}

TEST(Tuning, Folds) {
  auto f = cv_folds(23, 5, 1);
  ASSERT_EQ(f.size(), 23u);
  for (int k = 0; k < 5; ++k) {
    auto c = std::count(f.begin(), f.end(), k);
    EXPECT_TRUE(c == 4 || c == 5);
  }
  EXPECT_EQ(f, cv_folds(23, 5, 1));
}

TEST(Tuning, GridChoice) {
  LabeledSet ts = one_feature();
  auto fit = [](const LabeledSet& train, const TreeParams& p) {
    return fit_decision_tree(train, {}, p);
  };
  TreeParams stump{0, 1, 2}, deep{3, 1, 2}, deep2{4, 1, 2};
  EXPECT_EQ(grid_tune(fit, ts, std::vector<TreeParams>{stump}, 1).max_depth, 0);
  // A depth-0 tree is a single majority rule; depth 3 separates the data.
  EXPECT_EQ(grid_tune(fit, ts, std::vector<TreeParams>{stump, deep}, 1, 3).max_depth, 3);
  EXPECT_EQ(grid_tune(fit, ts, std::vector<TreeParams>{deep, deep2}, 1, 3).max_depth, 3);
  EXPECT_EQ(grid_tune(fit, ts, std::vector<TreeParams>{deep2, deep}, 1, 3).max_depth, 4);
}

}  // namespace
