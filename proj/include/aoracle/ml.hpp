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

// Decision-tree and decision-rule baselines that emit conditions in the
// same grammar as the GP learner.

#pragma once

#include <cstdint>
#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/predicate.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

struct DerivedFeature {
  std::string name;
  Node exp;  // arithmetic expression over schema variables
};

struct FeatureSpec {
  std::vector<DerivedFeature> derived;
};

// Parses (name, expression text) pairs. Names must be identifiers that are
// unique and disjoint from the schema's variable names.
FeatureSpec make_features(const InputSchema& schema,
                          const std::vector<std::pair<std::string, std::string>>& defs);

// Feature j: schema variable j for j < schema.size(), then derived features.
class FeatureTable {
 public:
  FeatureTable(const InputSchema& schema, const FeatureSpec& spec);

  std::size_t size() const { return exps_.size(); }
  const std::string& name(std::size_t f) const { return names_[f]; }
  const Node& exp(std::size_t f) const { return exps_[f]; }
  // NaN where a derived feature divides by (near) zero.
  double value(std::size_t f, const TestInput& input) const;

 private:
  std::vector<std::string> names_;
  std::vector<Node> exps_;
};

// `feature op threshold` with op in {<=, >}.
struct FeatureTerm {
  std::size_t feature = 0;
  RelOp op = RelOp::kLe;
  double threshold = 0.0;
};

struct Rule {
  Condition condition;  // expanded to schema variables
  Verdict verdict = Verdict::kPass;
  double confidence = 0.0;
  std::vector<FeatureTerm> terms;
};

struct RuleModel {
  std::vector<Rule> rules;
};

// Condition of a term list; the empty list becomes `0 = 0`.
Condition terms_condition(const FeatureTable& table, const std::vector<FeatureTerm>& terms);

// Evaluates the terms on computed feature values.
bool terms_hold(const FeatureTable& table, const std::vector<FeatureTerm>& terms,
                const TestInput& input);

// First satisfied rule's verdict, or Inconclusive.
Verdict model_predict(const RuleModel& model, const TestInput& input);

struct TreeParams {
  int max_depth = 5;
  int min_leaf = 1;
  int min_split = 2;
};

// Binary CART with Gini impurity; one rule per leaf, confidence = leaf
// purity.
RuleModel fit_decision_tree(const LabeledSet& ts, const FeatureSpec& features,
                            const TreeParams& params = {});

struct RuleParams {
  std::size_t min_coverage = 1;
  double min_precision = 0.95;
  int max_terms = 3;
};

// Sequential covering, failing class first. Confidence = precision on ts.
RuleModel fit_decision_rules(const LabeledSet& ts, const FeatureSpec& features,
                             const RuleParams& params = {});

// Seeded assignment of n rows to k folds.
std::vector<int> cv_folds(std::size_t n, int k, std::uint64_t seed);

template <typename Params, typename Fit>
double cv_accuracy(const Fit& fit, const LabeledSet& ts, const Params& params,
                   const std::vector<int>& folds, int k) {
  std::size_t correct = 0;
  for (int f = 0; f < k; ++f) {
    LabeledSet train{ts.schema, {}, ts.name};
    std::vector<const LabeledRow*> held;
    for (std::size_t i = 0; i < ts.rows.size(); ++i) {
      if (folds[i] == f) {
        held.push_back(&ts.rows[i]);
      } else {
        train.rows.push_back(ts.rows[i]);
      }
    }
    if (held.empty() || train.rows.empty()) continue;
    RuleModel m = fit(train, params);
    for (const LabeledRow* r : held) correct += model_predict(m, r->input) == r->verdict;
  }
  return ts.rows.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(ts.rows.size());
}

// k-fold cross-validated accuracy argmax over the grid; ties keep the
// earliest entry.
template <typename Params, typename Fit>
Params grid_tune(const Fit& fit, const LabeledSet& ts, const std::vector<Params>& grid,
                 std::uint64_t seed, int k = 5) {
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");
  if (grid.size() == 1 || ts.rows.size() < 2) return grid.front();
  int folds_n = std::min<int>(k, static_cast<int>(ts.rows.size()));
  auto folds = cv_folds(ts.rows.size(), folds_n, seed);
  std::size_t best = 0;
  double best_acc = -1.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double acc = cv_accuracy(fit, ts, grid[g], folds, folds_n);
    if (acc > best_acc) {
      best_acc = acc;
      best = g;
    }
  }
  return grid[best];
}

}  // namespace aoracle
