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

// Assertions, verdict thresholds, conflict-graph pruning and the resulting
// oracle's verdict function.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/predicate.hpp"
#include "aoracle/satcheck.hpp"

namespace aoracle {

// condition => verdict, with its precision on a training set.
struct Assertion {
  Condition condition;
  Verdict verdict = Verdict::kPass;
  double confidence = 0.0;
};

struct Oracle {
  InputSchema schema;
  double theta = 0.0;
  std::vector<Assertion> assertions;
};

// Share of training rows satisfying `cond` whose label equals `verdict`;
// 0 when no row satisfies it.
double confidence(const Condition& cond, Verdict verdict, const LabeledSet& ts);

std::vector<Assertion> threshold_filter(const std::vector<Assertion>& assertions, double theta);

// Bipartite graph between pass and fail assertions (indices into the
// assertion list) whose conditions may be satisfied together.
struct ConflictGraph {
  std::vector<std::size_t> pass;
  std::vector<std::size_t> fail;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (pass, fail)
};

struct PruneOptions {
  SatBudget budget;
  unsigned jobs = 1;
};

// An edge is added unless the satisfiability check proves the pair
// disjoint.
ConflictGraph build_conflict_graph(const std::vector<Assertion>& assertions,
                                   const InputSchema& schema, const PruneOptions& options = {});

struct PruneResult {
  std::vector<Assertion> kept;        // original order
  std::vector<std::size_t> removed;   // indices, in removal order
  std::size_t iterations = 0;
  ConflictGraph graph;
};

// Greedy vertex removal until no edge is left: shortest conditions first,
// then highest degree, then a seeded random choice preferring pass
// assertions.
PruneResult prune_graph(const std::vector<Assertion>& assertions, const ConflictGraph& graph,
                        std::uint64_t seed);

PruneResult prune(const std::vector<Assertion>& assertions, const InputSchema& schema,
                  std::uint64_t seed, const PruneOptions& options = {});

struct BuildResult {
  Oracle oracle;
  std::size_t candidates = 0;  // sources received
  std::size_t retained = 0;    // after the threshold
  std::size_t distinct = 0;    // after de-duplication
  PruneResult pruning;
};

BuildResult build_oracle_detailed(const std::vector<std::pair<Condition, Verdict>>& sources,
                                  const LabeledSet& ts, double theta, std::uint64_t seed,
                                  const PruneOptions& options = {});

Oracle build_oracle(const std::vector<std::pair<Condition, Verdict>>& sources,
                    const LabeledSet& ts, double theta, std::uint64_t seed,
                    const PruneOptions& options = {});

// Fail if a fail assertion holds, else Pass if a pass assertion holds, else
// Inconclusive.
Verdict predict(const Oracle& oracle, const TestInput& input);

// Inputs satisfying both a pass and a fail assertion.
std::size_t count_mixed(const Oracle& oracle, const DataMatrix& inputs);

}  // namespace aoracle
