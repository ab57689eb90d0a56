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

// Oracle accuracy metrics and robustness statistics.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/oracle.hpp"

namespace aoracle {

struct PredictionRecord {
  std::size_t id = 0;
  Verdict truth = Verdict::kPass;
  Verdict predicted = Verdict::kInconclusive;
};

struct EvalReport {
  std::size_t n_total = 0;
  std::size_t n_conclusive = 0;
  std::size_t n_correct = 0;
  std::size_t n_pass_as_fail = 0;
  std::size_t n_fail_as_pass = 0;
  double accuracy = 0.0;
  std::optional<double> relative_accuracy;  // empty when nothing is conclusive
  double pass_as_fail = 0.0;
  double fail_as_pass = 0.0;
  double inconclusive_rate = 0.0;
  std::vector<PredictionRecord> per_test;
};

EvalReport make_report(const std::vector<Verdict>& truth, const std::vector<Verdict>& predicted);
EvalReport evaluate_oracle(const Oracle& oracle, const LabeledSet& test_set);

// Share of tests predicted correctly by exactly one of the two reports.
// Throws Error(kTestSetMismatch) when the reports cover different tests.
std::pair<double, double> unique_correct(const EvalReport& a, const EvalReport& b);

// Mean absolute deviation from the mean.
double aad(const std::vector<double>& values);

enum class Magnitude { kNegligible, kSmall, kMedium, kLarge };
const char* to_string(Magnitude m);

struct EffectSize {
  double a12 = 0.5;
  Magnitude magnitude = Magnitude::kNegligible;
};

// Probability that a draw from xs exceeds one from ys, ties counting half.
double vargha_delaney_a12(const std::vector<double>& xs, const std::vector<double>& ys);
EffectSize vargha_delaney(const std::vector<double>& xs, const std::vector<double>& ys);

using InferFn = std::function<Oracle(const LabeledSet& train, double theta, std::uint64_t seed)>;

struct RobustnessResult {
  std::vector<std::vector<double>> accuracies;  // [column][repeat]
  std::vector<double> column_means;
  double aad = 0.0;
};

// Builds `repeats` oracles per re-execution column with derived seeds and
// evaluates each on the test set. Cells run in parallel.
RobustnessResult robustness_sweep(const RerunMatrix& matrix, const InferFn& infer,
                                  const LabeledSet& test_set, double theta, int repeats,
                                  std::uint64_t seed, unsigned jobs = 1);

struct SummaryRow {
  std::string method;
  double theta = 0.0;
  EvalReport report;
};

// Method x threshold table in Markdown.
std::string markdown_summary(const std::vector<SummaryRow>& rows);

}  // namespace aoracle
