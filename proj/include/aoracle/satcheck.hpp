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

// Sound but incomplete satisfiability check for the conjunction of two
// conditions over the schema's bounded input box.
//
// A witness search over random points and a coarse lattice proves
// satisfiability; interval constraint propagation with bisection proves
// unsatisfiability. Anything else is reported as unknown.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aoracle/predicate.hpp"

namespace aoracle {

struct SatBudget {
  int samples = 4096;
  int grid_per_dim = 5;
  // The lattice is only used up to this many dimensions.
  int max_grid_dims = 6;
  // Boxes examined per DNF branch during interval refutation.
  int refute_nodes = 64;
  std::uint64_t seed = 0;
  double eq_tol = kDefaultEqTol;
};

enum class SatStatus { kSat, kUnsat, kUnknown };

const char* to_string(SatStatus status);

struct SatResult {
  SatStatus status = SatStatus::kUnknown;
  std::optional<TestInput> witness;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo <= hi); }
  static Interval whole();
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::vector<Interval>;

Box schema_box(const InputSchema& schema);

// Outward-rounded enclosure of the expression's defined values over a box.
Interval enclose(const Node& exp, const Box& box, double eq_tol = kDefaultEqTol);

// True when no point of `box` satisfies all relational terms together.
bool refute_conjunction(const std::vector<const Node*>& rels, const Box& box,
                        double eq_tol = kDefaultEqTol, int node_budget = 64);

// True when no point of the box satisfies the condition.
bool refute(const Condition& cond, const Box& box, double eq_tol = kDefaultEqTol,
            int node_budget = 64);

// Reusable witness-search sample set for one schema and budget. Conditions
// can be evaluated on it once and paired cheaply afterwards.
class SatChecker {
 public:
  SatChecker(const InputSchema& schema, const SatBudget& budget = {});

  const InputSchema& schema() const { return schema_; }
  const SatBudget& budget() const { return budget_; }
  std::size_t sample_count() const { return points_.rows; }

  std::vector<std::uint8_t> mask(const Condition& cond) const;

  SatResult check(const Condition& c1, const Condition& c2) const;
  // Same as check() with the conditions' sample masks precomputed.
  SatResult check(const Condition& c1, const std::vector<std::uint8_t>& m1,
                  const Condition& c2, const std::vector<std::uint8_t>& m2) const;

 private:
  TestInput row(std::size_t r) const;

  InputSchema schema_;
  SatBudget budget_;
  DataMatrix points_;
  Box box_;
};

SatResult check_conjunction(const Condition& c1, const Condition& c2,
                            const InputSchema& schema, const SatBudget& budget = {});

}  // namespace aoracle
