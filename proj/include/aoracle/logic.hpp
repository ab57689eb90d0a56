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

// Signals sampled at control points and the quantified logic fragment that
// conditions over control points translate to.
//
// A signal u with n control points over [0, b] holds value c_{u,j} on the
// slot [j*I, (j+1)*I), I = b / (n - 1), and c_{u,n-1} at t = b. A relational
// term over control points of position j therefore reads as
// `forall t in [j*I, (j+1)*I): exp(u(t), ...)`.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aoracle/predicate.hpp"

namespace aoracle {

struct Signal {
  std::string name;
  std::vector<double> values;

  // Piecewise-constant value at time t over the horizon [0, b].
  double value_at(double t, double horizon) const;
};

// Start of slot j: j * b / (n - 1), multiplied first so that grid points
// that are whole numbers come out exact.
double grid_time(double horizon, int n_points, int j);

// Index of the slot containing t, clamped to [0, n_points - 1].
int slot_of(double t, double horizon, int n_points);

// Flattens signals (matched by name) into control-point values. The schema
// must consist of signals only. Throws Error(kLengthMismatch) on a wrong
// number of values and Error(kSchema) on a missing signal.
TestInput encode_signals(const std::vector<Signal>& signals, const InputSchema& schema);
std::vector<Signal> decode_signals(const TestInput& input, const InputSchema& schema);

struct TimeInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_right = false;

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

// `forall t in interval: body` or, without an interval, an unquantified
// constant term. Variables in `body` are signal indices into
// InputSchema::signals() and stand for u(t).
struct QuantifiedTerm {
  std::optional<TimeInterval> interval;
  Node body;  // a Rel, or an And of Rels

  friend bool operator==(const QuantifiedTerm&, const QuantifiedTerm&) = default;
};

struct QuantifiedFormula {
  std::vector<std::vector<QuantifiedTerm>> disjuncts;

  friend bool operator==(const QuantifiedFormula&, const QuantifiedFormula&) = default;
};

// Replaces each control point by its signal and quantifies every relational
// term over its slot, then merges identical bodies over adjacent slots and
// conjoins bodies sharing an interval.
// Throws Error(kNonSignalVariable) when a plain variable is referenced and
// Error(kNonUniformSampling) when one term mixes signals whose sampling
// intervals differ.
QuantifiedFormula to_logic(const Condition& cond, const InputSchema& schema);

// Expands every quantifier into one relational term per covered slot.
// Throws Error(kGridMisaligned) for interval endpoints off the control-point
// grid.
Condition from_logic(const QuantifiedFormula& formula, const InputSchema& schema);

// "(forall t in [0,100): k(t) - p(t) <= 20) && (forall t in [100,200]: ...)"
std::string print_logic(const QuantifiedFormula& formula, const InputSchema& schema);

// Evaluates the formula directly on the piecewise-constant signals of
// `input`, checking every breakpoint inside each quantified interval.
bool evaluate_logic(const QuantifiedFormula& formula, const InputSchema& schema,
                    const TestInput& input, double eq_tol = kDefaultEqTol);

}  // namespace aoracle
