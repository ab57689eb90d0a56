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

// Inference methods end to end: condition sources from GP, DT, DR or their
// union, turned into an oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/gp.hpp"
#include "aoracle/ml.hpp"
#include "aoracle/oracle.hpp"

namespace aoracle {

enum class Method { kGpOchiai, kGpTarantula, kGpNaish, kDt, kDr, kEnsemble };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);
const std::vector<Method>& all_methods();

struct PipelineConfig {
  // Population, rates and depth for every GP run; fitness, target and seed
  // are set per run.
  GpConfig gp;
  std::vector<TreeParams> dt_grid = default_tree_grid();
  std::vector<RuleParams> dr_grid = default_rule_grid();
  // Derived features for DT and DR as (name, expression) pairs.
  std::vector<std::pair<std::string, std::string>> features;
  int cv_folds = 5;
  PruneOptions prune;
  unsigned jobs = 1;

  static std::vector<TreeParams> default_tree_grid();
  static std::vector<RuleParams> default_rule_grid();
};

using Sources = std::vector<std::pair<Condition, Verdict>>;

// Conditions proposed by one method for both verdicts.
Sources infer_sources(Method method, const LabeledSet& ts, const PipelineConfig& cfg,
                      std::uint64_t seed);

// Confidence, threshold, de-duplication and pruning applied to sources.
BuildResult build_from_sources(const Sources& sources, const LabeledSet& ts, double theta,
                               const PipelineConfig& cfg, std::uint64_t seed);

BuildResult infer_oracle(Method method, const LabeledSet& ts, double theta,
                         const PipelineConfig& cfg, std::uint64_t seed);

}  // namespace aoracle
