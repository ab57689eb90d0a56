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

// Synthetic systems under test with a known failure region and seeded,
// reproducible verdict flips.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/predicate.hpp"

namespace aoracle {

enum class FlipKind { kNone, kConstant, kBoundary };

const char* to_string(FlipKind kind);
std::optional<FlipKind> parse_flip_kind(std::string_view name);

// kConstant flips with probability p. kBoundary flips with
// p * exp(-d / width), d being the normalized distance to the nearest
// reference point of the other true class.
struct FlipModel {
  FlipKind kind = FlipKind::kNone;
  double p = 0.0;
  double width = 0.05;
};

inline constexpr std::size_t kBoundaryReferencePoints = 10000;

class SyntheticSut {
 public:
  // Throws Error(kValidation) for an invalid ground truth or flip model.
  SyntheticSut(std::string name, InputSchema schema, Condition ground_truth, FlipModel flip,
               std::uint64_t seed, std::pair<double, double> fail_band = {0.10, 0.60});

  const std::string& name() const { return name_; }
  const InputSchema& schema() const { return schema_; }
  const Condition& ground_truth() const { return truth_; }
  const FlipModel& flip() const { return flip_; }
  std::uint64_t seed() const { return seed_; }
  std::pair<double, double> fail_band() const { return band_; }

  // Fail when the ground truth holds.
  Verdict true_verdict(const TestInput& input) const;
  double flip_probability(const TestInput& input) const;
  // Deterministic in (seed, input, run_index).
  Verdict execute(const TestInput& input, std::size_t run_index) const;

 private:
  std::string name_;
  InputSchema schema_;
  Condition truth_;
  FlipModel flip_;
  std::uint64_t seed_;
  std::pair<double, double> band_;
  // Normalized reference points per true class (0 = pass, 1 = fail).
  std::vector<std::vector<double>> reference_[2];
};

// Counter-based uniform draw in [0, 1) keyed on seed, input and run.
double keyed_uniform(std::uint64_t seed, const TestInput& input, std::size_t run_index);

RerunMatrix rerun_matrix(const SyntheticSut& sut, const std::vector<TestInput>& inputs,
                         std::size_t n_runs);

// Labels from the ground truth, without flips.
LabeledSet truth_labels(const SyntheticSut& sut, const std::vector<TestInput>& inputs,
                        std::string name = "truth");

// Built-in scenarios, each in a deterministic and a flaky variant.
std::vector<SyntheticSut> scenario_catalog();
std::optional<SyntheticSut> find_scenario(std::string_view name);

}  // namespace aoracle
