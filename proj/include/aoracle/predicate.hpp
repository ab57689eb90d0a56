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

// Conditions over system inputs: the schema of a system under test, test
// inputs, the condition expression tree, its text format and its
// evaluation semantics.
//
// A condition is a disjunction of conjunctions of relational terms
// `exp ~ 0`, where `exp` is an arithmetic expression over input variables
// and constants:
//
//   or-term  ::= or-term || or-term | and-term
//   and-term ::= and-term && and-term | rel-term
//   rel-term ::= exp < 0 | exp <= 0 | exp > 0 | exp >= 0 | exp = 0 | exp != 0
//   exp      ::= exp + exp | exp - exp | exp * exp | exp / exp | const | var
//
// Signals are flattened into control-point variables named
// `c_<signal>_<position>`. In a signal schema every relational term may only
// mention control points of a single position.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aoracle {

inline constexpr double kDefaultEqTol = 1e-6;

struct VariableSpec {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

struct SignalSpec {
  std::string name;
  int n_points = 2;
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const SignalSpec&, const SignalSpec&) = default;
};

struct ControlPoint {
  std::size_t signal = 0;
  int position = 0;
};

std::string control_point_name(std::string_view signal, int position);

// Input space of a system under test. Signals are expanded to control-point
// variables appended after the plain variables; all lookups work on that
// flattened list.
class InputSchema {
 public:
  InputSchema() = default;

  // Throws Error(kSchema) on empty/duplicate names, lower >= upper, a signal
  // with fewer than two control points, or a non-positive time horizon when
  // signals are present.
  explicit InputSchema(std::vector<VariableSpec> variables,
                       std::vector<SignalSpec> signals = {},
                       double time_horizon = 0.0);

  std::size_t size() const { return flat_.size(); }
  const VariableSpec& variable(std::size_t index) const { return flat_[index]; }
  const std::vector<VariableSpec>& variables() const { return flat_; }
  std::optional<std::size_t> find(std::string_view name) const;

  const std::vector<VariableSpec>& base_variables() const { return base_; }
  const std::vector<SignalSpec>& signals() const { return signals_; }
  bool has_signals() const { return !signals_.empty(); }
  double time_horizon() const { return horizon_; }

  // I = b / (n_u - 1).
  double sampling_interval(std::size_t signal) const;
  std::optional<ControlPoint> control_point(std::size_t index) const;
  std::size_t control_point_index(std::size_t signal, int position) const;
  std::optional<std::size_t> find_signal(std::string_view name) const;
  int max_points() const;

  friend bool operator==(const InputSchema& a, const InputSchema& b) {
    return a.base_ == b.base_ && a.signals_ == b.signals_ &&
           a.horizon_ == b.horizon_;
  }

 private:
  std::vector<VariableSpec> base_;
  std::vector<SignalSpec> signals_;
  double horizon_ = 0.0;
  std::vector<VariableSpec> flat_;
  std::vector<int> signal_of_;    // -1 for plain variables
  std::vector<int> position_of_;  // -1 for plain variables
  std::vector<std::size_t> signal_offset_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

// One value per flattened schema variable, in schema order.
struct TestInput {
  std::vector<double> values;

  friend bool operator==(const TestInput&, const TestInput&) = default;
};

TestInput make_input(const InputSchema& schema,
                     const std::map<std::string, double>& values);

// Size and bounds check; returns a description of the first violation.
std::optional<std::string> check_input(const InputSchema& schema,
                                       const TestInput& input);

enum class NodeKind : std::uint8_t { kOr, kAnd, kRel, kAdd, kSub, kMul, kDiv, kConst, kVar };
enum class RelOp : std::uint8_t { kLt, kLe, kGt, kGe, kEq, kNe };

// Grammar nonterminal a node derives from.
enum class Nonterminal : std::uint8_t { kOrTerm, kAndTerm, kRelTerm, kExp };

struct Node {
  NodeKind kind = NodeKind::kConst;
  RelOp op = RelOp::kEq;
  double value = 0.0;
  std::size_t var = 0;
  std::vector<Node> children;

  friend bool operator==(const Node&, const Node&) = default;
};

bool is_arithmetic(NodeKind kind);
bool is_expression(NodeKind kind);
Nonterminal nonterminal_of(NodeKind kind);
const char* spelling(RelOp op);
const char* spelling(NodeKind kind);

namespace expr {
Node var(std::size_t index);
Node constant(double value);
Node add(Node a, Node b);
Node sub(Node a, Node b);
Node mul(Node a, Node b);
Node div(Node a, Node b);
Node binary(NodeKind kind, Node a, Node b);
Node rel(Node exp, RelOp op);
// Flattening constructors; a single child is returned as is.
Node all_of(std::vector<Node> terms);
Node any_of(std::vector<Node> terms);
}  // namespace expr

struct Condition {
  Node root;

  friend bool operator==(const Condition&, const Condition&) = default;
};

// The condition `0 = 0`, satisfied by every input.
Condition tautology();

struct ParseOptions {
  int max_depth = 64;
};

// Accepts `lhs op rhs` for every relational term; anything other than a
// literal zero on the right is moved left as `lhs - (rhs) op 0`. Operators:
// `&&`, `||`, `<`, `<=`, `>`, `>=`, `=` (or `==`), `!=`.
Condition parse_condition(std::string_view text, const InputSchema& schema,
                          const ParseOptions& options = {});

// Parses a bare arithmetic expression (the `exp` nonterminal).
Node parse_expression(std::string_view text, const InputSchema& schema);

using NameFn = std::function<std::string(std::size_t)>;

// Canonical text: `exp op 0` terms joined by ` && ` and ` || `, minimal
// parentheses, shortest round-trip number formatting.
std::string print_condition(const Condition& cond, const InputSchema& schema);
std::string print_expression(const Node& exp, const NameFn& name);
std::string print_expression(const Node& exp, const InputSchema& schema);
std::string format_number(double value);

// Human-facing form in which `E - c ~ 0` (c a nonzero constant) is shown as
// `E ~ c`. Also parseable, and parses back to the same tree.
std::string display_condition(const Condition& cond, const InputSchema& schema);
std::string display_rel(const Node& rel, const NameFn& name);

// Flattens nested conjunctions/disjunctions.
Condition canonicalize(const Condition& cond);
Node canonicalize(const Node& node);

struct EvalResult {
  bool value = false;
  // Some relational term divided by a value with |denominator| <= eq_tol
  // and therefore evaluated to false.
  bool division_by_zero = false;
};

EvalResult evaluate_checked(const Condition& cond, const TestInput& input,
                            double eq_tol = kDefaultEqTol);
bool evaluate(const Condition& cond, const TestInput& input,
              double eq_tol = kDefaultEqTol);
bool evaluate_rel(const Node& rel, std::span<const double> values, double eq_tol,
                  bool* division_by_zero = nullptr);

// Arithmetic value of an expression; nullopt on division by a near-zero
// denominator.
std::optional<double> evaluate_expression(const Node& exp,
                                          std::span<const double> values,
                                          double eq_tol = kDefaultEqTol);

// Does `value ~ 0` hold under the equality tolerance?
bool compare_to_zero(double value, RelOp op, double eq_tol);

// Number of relational, arithmetic and connective operators in the display
// form (`x2 < 43` has length 1, `x1 + x2 < 10` has length 2).
std::size_t condition_length(const Condition& cond);

// Depth of the display form: leaves 0, operators and connectives +1, and a
// relational term 1 + depth of its displayed left-hand side.
int condition_depth(const Condition& cond);
int node_depth(const Node& node);
std::size_t node_count(const Node& node);

// Control-point position referenced by an expression. nullopt when it only
// mentions constants and plain variables; throws Error(kPositionMix) when it
// mixes positions.
std::optional<int> expression_position(const Node& exp, const InputSchema& schema);

// Grammar, variable range, position and depth check. Returns the first
// violation found.
std::optional<std::string> validate(const Condition& cond,
                                    const InputSchema& schema, int max_depth);
std::optional<std::string> validate_expression(const Node& exp,
                                               const InputSchema& schema);

// Disjunctive normal form: one vector of relational-term pointers per
// disjunct.
std::vector<std::vector<const Node*>> dnf(const Node& node);

// Column-major view of many test inputs, used for vectorized evaluation.
struct DataMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<double>> columns;

  static DataMatrix from_inputs(const InputSchema& schema,
                                const std::vector<TestInput>& inputs);
};

// Evaluates the condition on every row at once; out[i] is 1 when row i
// satisfies the condition.
void evaluate_batch(const Condition& cond, const DataMatrix& data,
                    std::vector<std::uint8_t>& out,
                    double eq_tol = kDefaultEqTol);

}  // namespace aoracle
