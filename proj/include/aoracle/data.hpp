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

// Labeled test data: verdicts, training sets, re-execution matrices and
// adaptive random input generation.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoracle/predicate.hpp"

namespace aoracle {

enum class Verdict : std::uint8_t { kPass, kFail, kInconclusive };

const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);
// Pass <-> Fail; Inconclusive maps to itself.
Verdict opposite(Verdict v);

struct LabeledRow {
  TestInput input;
  Verdict verdict = Verdict::kPass;

  friend bool operator==(const LabeledRow&, const LabeledRow&) = default;
};

// A training or test set. Verdicts are Pass or Fail only.
struct LabeledSet {
  InputSchema schema;
  std::vector<LabeledRow> rows;
  std::string name;

  std::size_t size() const { return rows.size(); }
  std::size_t count(Verdict v) const;
  std::vector<TestInput> inputs() const;
  DataMatrix matrix() const;
};

// Throws Error(kValidation) for inconclusive labels or inputs outside the
// schema.
void check_labeled_set(const LabeledSet& set);

// Verdicts of every test input over several executions.
struct RerunMatrix {
  InputSchema schema;
  std::vector<TestInput> inputs;
  std::vector<std::vector<Verdict>> verdicts;  // [test][run]
  std::size_t n_runs = 0;                       // kept for matrices without tests

  std::size_t runs() const { return verdicts.empty() ? n_runs : verdicts.front().size(); }
};

// Training set of the k-th execution (1-based).
LabeledSet column_dataset(const RerunMatrix& m, std::size_t k);

// Share of tests whose verdicts are not all equal. Needs at least two runs.
double flakiness_rate(const RerunMatrix& m);

// Keeps tests whose majority verdict occurs in at least `min_agreement` of
// the runs and labels them with it. Requires 0.5 < min_agreement <= 1.
LabeledSet majority_filter(const RerunMatrix& m, double min_agreement);

// Maps each coordinate onto [0, 1] using the schema bounds.
std::vector<double> normalize(const InputSchema& schema, const TestInput& input);

// Index of the candidate whose nearest selected point is farthest away;
// ties go to the earliest candidate. Points are in normalized coordinates.
std::size_t select_farthest(const std::vector<std::vector<double>>& selected,
                            const std::vector<std::vector<double>>& candidates);

// Fixed-size-candidate-set adaptive random testing: the first input is
// uniform, each further input is the farthest of `pool` uniform candidates.
std::vector<TestInput> adaptive_random_generate(const InputSchema& schema, std::size_t n,
                                                std::size_t pool, std::uint64_t seed);

std::vector<TestInput> uniform_generate(const InputSchema& schema, std::size_t n,
                                        std::uint64_t seed);

}  // namespace aoracle
