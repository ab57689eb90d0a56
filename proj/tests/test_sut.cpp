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
#include <fstream>
#include <sstream>

#include "aoracle/error.hpp"
#include "aoracle/gp.hpp"
#include "aoracle/io.hpp"
#include "aoracle/sut.hpp"

namespace {

using namespace aoracle;

SyntheticSut constant_flip(double p, std::uint64_t seed = 3) {
  InputSchema s({{"x1", 0, 100}, {"x2", 0, 100}});
  return SyntheticSut("c", s, parse_condition("x1 + x2 > 50", s), {FlipKind::kConstant, p, 0.05},
                      seed, {0.0, 1.0});
}

TEST(Sut, NoFlipMeansTruth) {
  SyntheticSut sut = constant_flip(0.0);
  auto inputs = adaptive_random_generate(sut.schema(), 100, 10, 1);
  RerunMatrix m = rerun_matrix(sut, inputs, 5);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (Verdict v : m.verdicts[i]) ASSERT_EQ(v, sut.true_verdict(inputs[i]));
  }
  EXPECT_EQ(flakiness_rate(m), 0.0);
}

// A test stays constant only if every run flips or none does, which has
// probability 0.95^500 + 0.05^500 here.
TEST(Sut, HighFlipRateOverManyRunsMakesEverythingFlaky) {
  SyntheticSut sut = constant_flip(0.95);
  auto inputs = adaptive_random_generate(sut.schema(), 100, 10, 2);
  EXPECT_EQ(flakiness_rate(rerun_matrix(sut, inputs, 500)), 1.0);
  // With few runs nearly every test flips every time and looks stable.
  EXPECT_LT(flakiness_rate(rerun_matrix(constant_flip(0.999), inputs, 10)), 0.1);
}

// P(flaky) = 1 - 0.9^10 - 0.1^10 = 0.6513; over 200 tests the binomial
// standard deviation is 0.034, so [0.55, 0.80] is about 3 sigma.
TEST(Sut, ConstantFlipRate) {
  SyntheticSut sut = constant_flip(0.1);
  auto inputs = adaptive_random_generate(sut.schema(), 200, 10, 3);
  double rate = flakiness_rate(rerun_matrix(sut, inputs, 10));
  EXPECT_GE(rate, 0.55);
  EXPECT_LE(rate, 0.80);
}

TEST(Sut, Deterministic) {
  SyntheticSut sut = constant_flip(0.3);
  auto inputs = adaptive_random_generate(sut.schema(), 50, 10, 4);
  RerunMatrix a = rerun_matrix(sut, inputs, 4), b = rerun_matrix(sut, inputs, 4);
  EXPECT_EQ(a.verdicts, b.verdicts);
  EXPECT_NE(rerun_matrix(constant_flip(0.3, 99), inputs, 4).verdicts, a.verdicts);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    EXPECT_EQ(sut.execute(inputs[i], 2), a.verdicts[i][2]);
  }
}

TEST(Sut, ColumnDatasetMatchesExecution) {
  SyntheticSut sut = *find_scenario("two-region-flaky");
  auto inputs = adaptive_random_generate(sut.schema(), 80, 10, 5);
  RerunMatrix m = rerun_matrix(sut, inputs, 6);
  for (std::size_t k = 1; k <= 6; ++k) {
    LabeledSet col = column_dataset(m, k);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      ASSERT_EQ(col.rows[i].verdict, sut.execute(inputs[i], k - 1));
    }
  }
}

TEST(Sut, BoundaryFlipsDecayWithDistance) {
  SyntheticSut sut = *find_scenario("conjunctive-box-flaky");
  TestInput deep{{5, 0.5, 12, 5}};      // far from the fail box
  TestInput edge{{60.5, 4.5, 12, 5}};   // just inside it
  EXPECT_LT(sut.flip_probability(deep), 1e-3);
  EXPECT_GT(sut.flip_probability(edge), 0.05);
  EXPECT_LE(sut.flip_probability(edge), sut.flip().p);
}

TEST(Sut, Validation) {
  InputSchema s({{"x", 0, 1}});
  EXPECT_THROW(SyntheticSut("bad", s, parse_condition("x > 0", s), {FlipKind::kConstant, 1.0, 0.1}, 1),
               Error);
  EXPECT_THROW(SyntheticSut("bad", s, parse_condition("x > 0", s), {FlipKind::kBoundary, 0.1, 0.0}, 1),
               Error);
  EXPECT_EQ(parse_flip_kind("boundary"), FlipKind::kBoundary);
}

TEST(Sut, KeyedUniformRange) {
  TestInput t{{0.25, 0.5}};
  for (std::size_t r = 0; r < 1000; ++r) {
    double u = keyed_uniform(7, t, r);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(keyed_uniform(7, t, 3), keyed_uniform(7, t, 3));
}

TEST(Catalog, Shape) {
  auto cat = scenario_catalog();
  ASSERT_GE(cat.size(), 4u);
  for (const auto& sut : cat) {
    EXPECT_FALSE(validate(sut.ground_truth(), sut.schema(), 64)) << sut.name();
    EXPECT_EQ(find_scenario(sut.name())->name(), sut.name());
  }
  EXPECT_FALSE(find_scenario("nope"));
}

// With no flips a fail assertion equal to the ground truth has c_p = 0.
TEST(Catalog, GroundTruthIsPerfectFailRule) {
  for (const auto& sut : scenario_catalog()) {
    if (sut.flip().kind != FlipKind::kNone) continue;
    LabeledSet ts = truth_labels(sut, adaptive_random_generate(sut.schema(), 300, 10, 6));
    Spectrum sp = count_spectrum(sut.ground_truth(), ts);
    EXPECT_EQ(sp.c_p, 0u) << sut.name();
    EXPECT_EQ(sp.c_f, sp.n_f) << sut.name();
  }
}

// Failure rates on 1000 ART points, measured once and frozen.
TEST(Catalog, GoldenFailureRates) {
  std::ifstream in(std::string(AORACLE_GOLDEN_DIR) + "/catalog_rates.json");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream buf;
  buf << in.rdbuf();
  auto golden = io::parse_json(buf.str(), "golden");
  for (const auto& sut : scenario_catalog()) {
    LabeledSet ts = truth_labels(sut, adaptive_random_generate(sut.schema(), 1000, 10, 2024));
    double rate = static_cast<double>(ts.count(Verdict::kFail)) / 1000.0;
    ASSERT_TRUE(golden.contains(sut.name())) << sut.name();
    EXPECT_EQ(rate, golden[sut.name()].get<double>()) << sut.name();
    EXPECT_GE(rate, sut.fail_band().first) << sut.name();
    EXPECT_LE(rate, sut.fail_band().second) << sut.name();
  }
}

}  // namespace
