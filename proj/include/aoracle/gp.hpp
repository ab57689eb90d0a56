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

// Grammar-based genetic programming that evolves conditions separating the
// failing (or passing) rows of a training set, scored with spectrum-based
// fault-localization formulas.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/predicate.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

// c_p / c_f: passing / failing rows satisfying a condition; n_p / n_f: all
// passing / failing rows.
struct Spectrum {
  std::size_t c_p = 0;
  std::size_t c_f = 0;
  std::size_t n_p = 0;
  std::size_t n_f = 0;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

enum class FitnessKind { kOchiai, kTarantula, kNaish };

const char* to_string(FitnessKind kind);
std::optional<FitnessKind> parse_fitness(std::string_view name);

double fitness_ochiai(double c_f, double c_p, double n_f);
double fitness_tarantula(double c_f, double c_p, double n_f, double n_p);
double fitness_naish(double c_f, double c_p, double n_f, double n_p);

using FitnessFn = std::function<double(const Spectrum&)>;

FitnessFn fitness_function(FitnessKind kind);
// The same formula with passing and failing counts exchanged.
FitnessFn pass_dual(FitnessFn fn);
FitnessFn fitness_for(FitnessKind kind, Verdict target);

// Vectorized spectrum counting over one training set.
class SpectrumCounter {
 public:
  explicit SpectrumCounter(const LabeledSet& ts);

  Spectrum count(const Condition& cond) const;
  std::size_t n_p() const { return n_p_; }
  std::size_t n_f() const { return n_f_; }

 private:
  DataMatrix data_;
  std::vector<std::uint8_t> is_fail_;
  std::size_t n_p_ = 0;
  std::size_t n_f_ = 0;
};

Spectrum count_spectrum(const Condition& cond, const LabeledSet& ts);

struct GpConfig {
  int pop_size = 50;
  int generations = 50;
  double mutation_rate = 0.1;
  double crossover_rate = 0.7;
  int max_depth = 5;
  int tournament_size = 7;
  // Ephemeral random constants are drawn from this range; defaults to the
  // hull of the schema bounds.
  std::optional<std::pair<double, double>> const_range;
  FitnessKind fitness = FitnessKind::kOchiai;
  Verdict target = Verdict::kFail;
  int best_k = 10;
  int retry_limit = 20;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

// Throws Error(kValidation) on out-of-range settings.
void check_config(const GpConfig& cfg);

struct ScoredCondition {
  Condition condition;
  double fitness = 0.0;
  std::size_t c_p = 0;
  std::size_t c_f = 0;
};

// Random tree construction settings.
struct GrowSpec {
  const InputSchema* schema = nullptr;
  int max_depth = 5;
  double const_lo = 0.0;
  double const_hi = 1.0;
};

GrowSpec grow_spec(const InputSchema& schema, const GpConfig& cfg);

// Grow-method random condition; grammar-valid, within max_depth, and
// position well-formed.
Condition grow_random(const GrowSpec& spec, Rng& rng);

// Nodes in preorder; indices used by the subtree helpers below.
std::vector<const Node*> preorder(const Node& root);
Node replace_subtree(const Node& root, std::size_t index, Node replacement);
std::pair<Node, Node> swap_subtrees(const Node& a, std::size_t ia, const Node& b,
                                    std::size_t ib);

// One-point crossover between nodes of the same nonterminal. Invalid
// offspring are redrawn up to `retry_limit` times, after which the parents
// are returned unchanged.
std::pair<Condition, Condition> crossover_one_point(const Condition& a, const Condition& b,
                                                    const GrowSpec& spec, int retry_limit,
                                                    Rng& rng);

// Replaces one random subtree by a freshly grown one of the same
// nonterminal, with the same retry policy.
Condition mutate_one_point(const Condition& a, const GrowSpec& spec, int retry_limit, Rng& rng);

struct GenerationStats {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

struct EvolveResult {
  std::vector<ScoredCondition> best;
  std::vector<GenerationStats> progress;
};

using PopulationObserver = std::function<void(int, const std::vector<ScoredCondition>&)>;

// Runs the GP. Throws Error(kEmptyTargetClass) when the training set has no
// row with the target verdict.
EvolveResult evolve(const LabeledSet& ts, const GpConfig& cfg,
                    const PopulationObserver& observer = {});

std::string progress_csv(const std::vector<GenerationStats>& progress);

}  // namespace aoracle
