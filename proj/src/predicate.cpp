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

#include "aoracle/predicate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "aoracle/error.hpp"

namespace aoracle {

std::string control_point_name(std::string_view signal, int position) {
  return "c_" + std::string(signal) + "_" + std::to_string(position);
}

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return alpha(c) || (c >= '0' && c <= '9');
  });
}

void check_bounds(const std::string& name, double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw Error(ErrorCode::kSchema,
                "variable '" + name + "' needs finite bounds with lower < upper");
  }
}

}  // namespace

InputSchema::InputSchema(std::vector<VariableSpec> variables,
                         std::vector<SignalSpec> signals, double time_horizon)
    : base_(std::move(variables)),
      signals_(std::move(signals)),
      horizon_(time_horizon) {
  std::set<std::string, std::less<>> top_names;
  auto add = [&](VariableSpec spec, int signal, int position) {
    if (!by_name_.emplace(spec.name, flat_.size()).second) {
      throw Error(ErrorCode::kSchema, "duplicate variable name '" + spec.name + "'");
    }
    flat_.push_back(std::move(spec));
    signal_of_.push_back(signal);
    position_of_.push_back(position);
  };
  for (const auto& v : base_) {
    if (!valid_identifier(v.name)) {
      throw Error(ErrorCode::kSchema, "invalid variable name '" + v.name + "'");
    }
    check_bounds(v.name, v.lower, v.upper);
    if (!top_names.insert(v.name).second) {
      throw Error(ErrorCode::kSchema, "duplicate name '" + v.name + "'");
    }
    add(v, -1, -1);
  }
  if (!signals_.empty() && !(std::isfinite(horizon_) && horizon_ > 0.0)) {
    throw Error(ErrorCode::kSchema, "signals require a positive time horizon");
  }
  for (std::size_t s = 0; s < signals_.size(); ++s) {
    const auto& sig = signals_[s];
    if (!valid_identifier(sig.name)) {
      throw Error(ErrorCode::kSchema, "invalid signal name '" + sig.name + "'");
    }
    if (!top_names.insert(sig.name).second) {
      throw Error(ErrorCode::kSchema, "duplicate name '" + sig.name + "'");
    }
    if (sig.n_points < 2) {
      throw Error(ErrorCode::kSchema,
                  "signal '" + sig.name + "' needs at least two control points");
    }
    check_bounds(sig.name, sig.lower, sig.upper);
    signal_offset_.push_back(flat_.size());
    for (int j = 0; j < sig.n_points; ++j) {
      add({control_point_name(sig.name, j), sig.lower, sig.upper},
          static_cast<int>(s), j);
    }
  }
}

std::optional<std::size_t> InputSchema::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

double InputSchema::sampling_interval(std::size_t signal) const {
  return horizon_ / static_cast<double>(signals_.at(signal).n_points - 1);
}

std::optional<ControlPoint> InputSchema::control_point(std::size_t index) const {
  if (index >= flat_.size() || signal_of_[index] < 0) return std::nullopt;
  return ControlPoint{static_cast<std::size_t>(signal_of_[index]), position_of_[index]};
}

std::size_t InputSchema::control_point_index(std::size_t signal, int position) const {
  return signal_offset_.at(signal) + static_cast<std::size_t>(position);
}

std::optional<std::size_t> InputSchema::find_signal(std::string_view name) const {
  for (std::size_t s = 0; s < signals_.size(); ++s) {
    if (signals_[s].name == name) return s;
  }
  return std::nullopt;
}

int InputSchema::max_points() const {
  int m = 0;
  for (const auto& s : signals_) m = std::max(m, s.n_points);
  return m;
}

TestInput make_input(const InputSchema& schema,
                     const std::map<std::string, double>& values) {
  TestInput t;
  t.values.assign(schema.size(), 0.0);
  std::vector<bool> seen(schema.size(), false);
  for (const auto& [name, v] : values) {
    auto idx = schema.find(name);
    if (!idx) throw Error(ErrorCode::kUnknownVariable, "unknown variable '" + name + "'");
    t.values[*idx] = v;
    seen[*idx] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kValidation,
                  "missing value for '" + schema.variable(i).name + "'");
    }
  }
  return t;
}

std::optional<std::string> check_input(const InputSchema& schema,
                                       const TestInput& input) {
  if (input.values.size() != schema.size()) {
    return "expected " + std::to_string(schema.size()) + " values, got " +
           std::to_string(input.values.size());
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const auto& v = schema.variable(i);
    double x = input.values[i];
    if (!(x >= v.lower && x <= v.upper)) {
      return "value of '" + v.name + "' outside [" + format_number(v.lower) + ", " +
             format_number(v.upper) + "]";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Node helpers

bool is_arithmetic(NodeKind k) {
  return k == NodeKind::kAdd || k == NodeKind::kSub || k == NodeKind::kMul ||
         k == NodeKind::kDiv;
}

bool is_expression(NodeKind k) {
  return is_arithmetic(k) || k == NodeKind::kConst || k == NodeKind::kVar;
}

Nonterminal nonterminal_of(NodeKind k) {
  switch (k) {
    case NodeKind::kOr: return Nonterminal::kOrTerm;
    case NodeKind::kAnd: return Nonterminal::kAndTerm;
    case NodeKind::kRel: return Nonterminal::kRelTerm;
    default: return Nonterminal::kExp;
  }
}

const char* spelling(RelOp op) {
  switch (op) {
    case RelOp::kLt: return "<";
    case RelOp::kLe: return "<=";
    case RelOp::kGt: return ">";
    case RelOp::kGe: return ">=";
    case RelOp::kEq: return "=";
    case RelOp::kNe: return "!=";
  }
  return "?";
}

const char* spelling(NodeKind k) {
  switch (k) {
    case NodeKind::kOr: return "||";
    case NodeKind::kAnd: return "&&";
    case NodeKind::kAdd: return "+";
    case NodeKind::kSub: return "-";
    case NodeKind::kMul: return "*";
    case NodeKind::kDiv: return "/";
    default: return "";
  }
}

namespace expr {

Node var(std::size_t index) {
  Node n;
  n.kind = NodeKind::kVar;
  n.var = index;
  return n;
}

Node constant(double value) {
  Node n;
  n.kind = NodeKind::kConst;
  n.value = value;
  return n;
}

Node binary(NodeKind kind, Node a, Node b) {
  Node n;
  n.kind = kind;
  n.children.reserve(2);
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return n;
}

Node add(Node a, Node b) { return binary(NodeKind::kAdd, std::move(a), std::move(b)); }
Node sub(Node a, Node b) { return binary(NodeKind::kSub, std::move(a), std::move(b)); }
Node mul(Node a, Node b) { return binary(NodeKind::kMul, std::move(a), std::move(b)); }
Node div(Node a, Node b) { return binary(NodeKind::kDiv, std::move(a), std::move(b)); }

Node rel(Node exp, RelOp op) {
  Node n;
  n.kind = NodeKind::kRel;
  n.op = op;
  n.children.push_back(std::move(exp));
  return n;
}

namespace {
Node junction(NodeKind kind, std::vector<Node> terms) {
  if (terms.size() == 1) return std::move(terms.front());
  Node n;
  n.kind = kind;
  for (auto& t : terms) {
    if (t.kind == kind) {
      for (auto& c : t.children) n.children.push_back(std::move(c));
    } else {
      n.children.push_back(std::move(t));
    }
  }
  return n;
}
}  // namespace

Node all_of(std::vector<Node> terms) { return junction(NodeKind::kAnd, std::move(terms)); }
Node any_of(std::vector<Node> terms) { return junction(NodeKind::kOr, std::move(terms)); }

}  // namespace expr

Condition tautology() {
  return Condition{expr::rel(expr::constant(0.0), RelOp::kEq)};
}

Node canonicalize(const Node& node) {
  if (node.kind != NodeKind::kAnd && node.kind != NodeKind::kOr) return node;
  std::vector<Node> kids;
  kids.reserve(node.children.size());
  for (const auto& c : node.children) kids.push_back(canonicalize(c));
  return node.kind == NodeKind::kAnd ? expr::all_of(std::move(kids))
                                     : expr::any_of(std::move(kids));
}

Condition canonicalize(const Condition& cond) { return Condition{canonicalize(cond.root)}; }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
  kEnd, kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kLParen, kRParen,
  kLt, kLe, kGt, kGe, kEq, kNe, kAndAnd, kOrOr,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::size_t pos = 0;
  std::string_view text;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  while (true) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    Token t;
    t.pos = i;
    if (i >= s.size()) {
      out.push_back(t);
      return out;
    }
    char c = s[i];
    auto two = [&](char next) { return i + 1 < s.size() && s[i + 1] == next; };
    auto single = [&](Tok k, std::size_t len) {
      t.kind = k;
      t.text = s.substr(i, len);
      i += len;
    };
    if (digit(c) || (c == '.' && i + 1 < s.size() && digit(s[i + 1]))) {
      std::size_t j = i;
      while (j < s.size() && digit(s[j])) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && digit(s[j])) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && digit(s[k])) {
          while (k < s.size() && digit(s[k])) ++k;
          j = k;
        }
      }
      t.kind = Tok::kNumber;
      t.text = s.substr(i, j - i);
      std::string buf(t.text);
      if (buf.front() == '.') buf.insert(buf.begin(), '0');
      auto res = std::from_chars(buf.data(), buf.data() + buf.size(), t.number);
      if (res.ec != std::errc() || res.ptr != buf.data() + buf.size()) {
        throw SyntaxError(i, "number", "malformed number at position " + std::to_string(i));
      }
      i = j;
    } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i;
      while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
                              s[j] == '_' || digit(s[j]))) {
        ++j;
      }
      single(Tok::kIdent, j - i);
    } else if (c == '+') {
      single(Tok::kPlus, 1);
    } else if (c == '-') {
      single(Tok::kMinus, 1);
    } else if (c == '*') {
      single(Tok::kStar, 1);
    } else if (c == '/') {
      single(Tok::kSlash, 1);
    } else if (c == '(') {
      single(Tok::kLParen, 1);
    } else if (c == ')') {
      single(Tok::kRParen, 1);
    } else if (c == '<') {
      two('=') ? single(Tok::kLe, 2) : single(Tok::kLt, 1);
    } else if (c == '>') {
      two('=') ? single(Tok::kGe, 2) : single(Tok::kGt, 1);
    } else if (c == '=') {
      two('=') ? single(Tok::kEq, 2) : single(Tok::kEq, 1);
    } else if (c == '!' && two('=')) {
      single(Tok::kNe, 2);
    } else if (c == '&' && two('&')) {
      single(Tok::kAndAnd, 2);
    } else if (c == '|' && two('|')) {
      single(Tok::kOrOr, 2);
    } else {
      throw SyntaxError(i, "token",
                        "unexpected character '" + std::string(1, c) + "' at position " +
                            std::to_string(i));
    }
    out.push_back(t);
  }
}

bool is_relop(Tok k) {
  return k == Tok::kLt || k == Tok::kLe || k == Tok::kGt || k == Tok::kGe ||
         k == Tok::kEq || k == Tok::kNe;
}

RelOp to_relop(Tok k) {
  switch (k) {
    case Tok::kLt: return RelOp::kLt;
    case Tok::kLe: return RelOp::kLe;
    case Tok::kGt: return RelOp::kGt;
    case Tok::kGe: return RelOp::kGe;
    case Tok::kEq: return RelOp::kEq;
    default: return RelOp::kNe;
  }
}

constexpr int kMaxNesting = 200;

class Parser {
 public:
  Parser(std::string_view text, const InputSchema& schema)
      : tokens_(tokenize(text)), schema_(schema) {}

  Node parse_condition() {
    Node n = parse_or();
    expect_end();
    return n;
  }

  Node parse_expression_only() {
    Node n = parse_exp();
    expect_end();
    return n;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + std::string(t.text) + "'";
    throw SyntaxError(t.pos, expected,
                      "expected " + expected + " at position " + std::to_string(t.pos) +
                          ", found " + found);
  }

  void expect_end() {
    if (peek().kind != Tok::kEnd) fail("end of input");
  }

  struct NestGuard {
    explicit NestGuard(int& d) : depth(d) {
      if (++depth > kMaxNesting) {
        throw Error(ErrorCode::kDepthExceeded, "nesting too deep");
      }
    }
    ~NestGuard() { --depth; }
    int& depth;
  };

  Node parse_or() {
    std::vector<Node> terms;
    terms.push_back(parse_and());
    while (peek().kind == Tok::kOrOr) {
      take();
      terms.push_back(parse_and());
    }
    return expr::any_of(std::move(terms));
  }

  Node parse_and() {
    std::vector<Node> terms;
    terms.push_back(parse_and_operand());
    while (peek().kind == Tok::kAndAnd) {
      take();
      terms.push_back(parse_and_operand());
    }
    if (terms.size() > 1) {
      for (const auto& t : terms) {
        if (t.kind == NodeKind::kOr) {
          throw SyntaxError(peek().pos, "rel-term",
                            "a disjunction cannot appear inside a conjunction");
        }
      }
    }
    return expr::all_of(std::move(terms));
  }

  // Either a parenthesized condition or a relational term.
  Node parse_and_operand() {
    if (peek().kind == Tok::kLParen && !failed_groups_.count(pos_)) {
      std::size_t save = pos_;
      try {
        NestGuard g(nesting_);
        take();
        Node inner = parse_or();
        if (peek().kind != Tok::kRParen) fail("')'");
        take();
        Tok next = peek().kind;
        if (next == Tok::kEnd || next == Tok::kAndAnd || next == Tok::kOrOr ||
            next == Tok::kRParen) {
          return inner;
        }
        fail("'&&', '||' or ')'");
      } catch (const SyntaxError& e) {
        pos_ = save;
        failed_groups_.insert(save);
        std::size_t first = e.position();
        try {
          return parse_rel();
        } catch (const SyntaxError& e2) {
          if (e2.position() >= first) throw;
          throw e;
        }
      }
    }
    return parse_rel();
  }

  Node parse_rel() {
    Node lhs = parse_exp();
    if (!is_relop(peek().kind)) fail("relational operator");
    RelOp op = to_relop(take().kind);
    Node rhs = parse_exp();
    Node e = (rhs.kind == NodeKind::kConst && rhs.value == 0.0)
                 ? std::move(lhs)
                 : expr::sub(std::move(lhs), std::move(rhs));
    expression_position(e, schema_);
    return expr::rel(std::move(e), op);
  }

  Node parse_exp() {
    Node n = parse_term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      NodeKind k = take().kind == Tok::kPlus ? NodeKind::kAdd : NodeKind::kSub;
      n = expr::binary(k, std::move(n), parse_term());
    }
    return n;
  }

  Node parse_term() {
    Node n = parse_factor();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      NodeKind k = take().kind == Tok::kStar ? NodeKind::kMul : NodeKind::kDiv;
      n = expr::binary(k, std::move(n), parse_factor());
    }
    return n;
  }

  Node parse_factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber:
        return expr::constant(take().number);
      case Tok::kMinus: {
        take();
        if (peek().kind != Tok::kNumber) fail("number after unary '-'");
        return expr::constant(-take().number);
      }
      case Tok::kIdent: {
        const Token& id = take();
        auto idx = schema_.find(id.text);
        if (!idx) {
          throw Error(ErrorCode::kUnknownVariable,
                      "unknown variable '" + std::string(id.text) + "' at position " +
                          std::to_string(id.pos));
        }
        return expr::var(*idx);
      }
      case Tok::kLParen: {
        NestGuard g(nesting_);
        take();
        Node inner = parse_exp();
        if (peek().kind != Tok::kRParen) fail("')'");
        take();
        return inner;
      }
      default:
        fail("expression");
    }
  }

  std::vector<Token> tokens_;
  const InputSchema& schema_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
  std::set<std::size_t> failed_groups_;
};

}  // namespace

Condition parse_condition(std::string_view text, const InputSchema& schema,
                          const ParseOptions& options) {
  Parser p(text, schema);
  Condition c{p.parse_condition()};
  int d = condition_depth(c);
  if (d > options.max_depth) {
    throw Error(ErrorCode::kDepthExceeded, "condition depth " + std::to_string(d) +
                                               " exceeds limit " +
                                               std::to_string(options.max_depth));
  }
  return c;
}

Node parse_expression(std::string_view text, const InputSchema& schema) {
  Parser p(text, schema);
  return p.parse_expression_only();
}

// ---------------------------------------------------------------------------
// Printing

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::kAdd:
    case NodeKind::kSub: return 1;
    case NodeKind::kMul:
    case NodeKind::kDiv: return 2;
    default: return 3;
  }
}

void print_exp(const Node& n, const NameFn& name, std::string& out) {
  switch (n.kind) {
    case NodeKind::kConst:
      out += format_number(n.value);
      return;
    case NodeKind::kVar:
      out += name(n.var);
      return;
    default:
      break;
  }
  int p = precedence(n.kind);
  const Node& l = n.children[0];
  const Node& r = n.children[1];
  bool lp = precedence(l.kind) < p;
  bool rp = precedence(r.kind) <= p;
  if (lp) out += '(';
  print_exp(l, name, out);
  if (lp) out += ')';
  out += ' ';
  out += spelling(n.kind);
  out += ' ';
  if (rp) out += '(';
  print_exp(r, name, out);
  if (rp) out += ')';
}

// Left-hand side shown in the display form, and the constant on the right.
std::pair<const Node*, double> displayed_sides(const Node& rel) {
  const Node& e = rel.children[0];
  if (e.kind == NodeKind::kSub && e.children[1].kind == NodeKind::kConst &&
      e.children[1].value != 0.0) {
    return {&e.children[0], e.children[1].value};
  }
  return {&e, 0.0};
}

void print_node(const Node& n, const NameFn& name, bool display, std::string& out) {
  switch (n.kind) {
    case NodeKind::kOr:
    case NodeKind::kAnd: {
      const char* sep = n.kind == NodeKind::kOr ? " || " : " && ";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += sep;
        const Node& c = n.children[i];
        bool paren = n.kind == NodeKind::kAnd && c.kind == NodeKind::kOr;
        if (paren) out += '(';
        print_node(c, name, display, out);
        if (paren) out += ')';
      }
      return;
    }
    case NodeKind::kRel: {
      if (display) {
        out += display_rel(n, name);
      } else {
        print_exp(n.children[0], name, out);
        out += ' ';
        out += spelling(n.op);
        out += " 0";
      }
      return;
    }
    default:
      print_exp(n, name, out);
  }
}

NameFn schema_names(const InputSchema& schema) {
  return [&schema](std::size_t i) { return schema.variable(i).name; };
}

}  // namespace

std::string print_expression(const Node& exp, const NameFn& name) {
  std::string out;
  print_exp(exp, name, out);
  return out;
}

std::string print_expression(const Node& exp, const InputSchema& schema) {
  return print_expression(exp, schema_names(schema));
}

std::string print_condition(const Condition& cond, const InputSchema& schema) {
  std::string out;
  print_node(cond.root, schema_names(schema), false, out);
  return out;
}

std::string display_rel(const Node& rel, const NameFn& name) {
  auto [lhs, c] = displayed_sides(rel);
  std::string out;
  print_exp(*lhs, name, out);
  out += ' ';
  out += spelling(rel.op);
  out += ' ';
  out += format_number(c);
  return out;
}

std::string display_condition(const Condition& cond, const InputSchema& schema) {
  std::string out;
  print_node(cond.root, schema_names(schema), true, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

bool compare_to_zero(double v, RelOp op, double eq_tol) {
  switch (op) {
    case RelOp::kLt: return v < 0.0;
    case RelOp::kLe: return v <= 0.0;
    case RelOp::kGt: return v > 0.0;
    case RelOp::kGe: return v >= 0.0;
    case RelOp::kEq: return std::fabs(v) <= eq_tol;
    case RelOp::kNe: return std::fabs(v) > eq_tol;
  }
  return false;
}

std::optional<double> evaluate_expression(const Node& n, std::span<const double> values,
                                          double eq_tol) {
  switch (n.kind) {
    case NodeKind::kConst: return n.value;
    case NodeKind::kVar: return values[n.var];
    default: break;
  }
  auto a = evaluate_expression(n.children[0], values, eq_tol);
  if (!a) return std::nullopt;
  auto b = evaluate_expression(n.children[1], values, eq_tol);
  if (!b) return std::nullopt;
  switch (n.kind) {
    case NodeKind::kAdd: return *a + *b;
    case NodeKind::kSub: return *a - *b;
    case NodeKind::kMul: return *a * *b;
    case NodeKind::kDiv:
      if (std::fabs(*b) <= eq_tol) return std::nullopt;
      return *a / *b;
    default: return std::nullopt;
  }
}

bool evaluate_rel(const Node& rel, std::span<const double> values, double eq_tol,
                  bool* division_by_zero) {
  auto v = evaluate_expression(rel.children[0], values, eq_tol);
  if (!v) {
    if (division_by_zero) *division_by_zero = true;
    return false;
  }
  return compare_to_zero(*v, rel.op, eq_tol);
}

namespace {

bool eval_node(const Node& n, std::span<const double> values, double eq_tol, bool& dz) {
  switch (n.kind) {
    case NodeKind::kOr:
      for (const auto& c : n.children) {
        if (eval_node(c, values, eq_tol, dz)) return true;
      }
      return false;
    case NodeKind::kAnd:
      for (const auto& c : n.children) {
        if (!eval_node(c, values, eq_tol, dz)) return false;
      }
      return true;
    case NodeKind::kRel:
      return evaluate_rel(n, values, eq_tol, &dz);
    default:
      return false;
  }
}

}  // namespace

EvalResult evaluate_checked(const Condition& cond, const TestInput& input, double eq_tol) {
  EvalResult r;
  r.value = eval_node(cond.root, input.values, eq_tol, r.division_by_zero);
  return r;
}

bool evaluate(const Condition& cond, const TestInput& input, double eq_tol) {
  bool dz = false;
  return eval_node(cond.root, input.values, eq_tol, dz);
}

// ---------------------------------------------------------------------------
// Size measures

namespace {

std::size_t arithmetic_ops(const Node& n) {
  if (!is_arithmetic(n.kind)) return 0;
  return 1 + arithmetic_ops(n.children[0]) + arithmetic_ops(n.children[1]);
}

}  // namespace

std::size_t condition_length(const Condition& cond) {
  struct Rec {
    static std::size_t len(const Node& n) {
      if (n.kind == NodeKind::kRel) return 1 + arithmetic_ops(*displayed_sides(n).first);
      if (n.kind == NodeKind::kAnd || n.kind == NodeKind::kOr) {
        std::size_t s = n.children.size() - 1;
        for (const auto& c : n.children) s += len(c);
        return s;
      }
      return arithmetic_ops(n);
    }
  };
  return Rec::len(cond.root);
}

int node_depth(const Node& n) {
  if (n.kind == NodeKind::kRel) return 1 + node_depth(*displayed_sides(n).first);
  int m = 0;
  for (const auto& c : n.children) m = std::max(m, node_depth(c));
  return n.children.empty() ? 0 : 1 + m;
}

int condition_depth(const Condition& cond) { return node_depth(cond.root); }

std::size_t node_count(const Node& n) {
  std::size_t s = 1;
  for (const auto& c : n.children) s += node_count(c);
  return s;
}

// ---------------------------------------------------------------------------
// Validation

std::optional<int> expression_position(const Node& exp, const InputSchema& schema) {
  std::optional<int> pos;
  struct Rec {
    static void walk(const Node& n, const InputSchema& s, std::optional<int>& pos) {
      if (n.kind == NodeKind::kVar) {
        if (auto cp = s.control_point(n.var)) {
          if (pos && *pos != cp->position) {
            throw Error(ErrorCode::kPositionMix,
                        "expression mixes control points of positions " +
                            std::to_string(*pos) + " and " + std::to_string(cp->position));
          }
          pos = cp->position;
        }
      }
      for (const auto& c : n.children) walk(c, s, pos);
    }
  };
  Rec::walk(exp, schema, pos);
  return pos;
}

std::optional<std::string> validate_expression(const Node& n, const InputSchema& schema) {
  switch (n.kind) {
    case NodeKind::kConst:
      if (!n.children.empty()) return "constant with children";
      if (!std::isfinite(n.value)) return "non-finite constant";
      return std::nullopt;
    case NodeKind::kVar:
      if (!n.children.empty()) return "variable with children";
      if (n.var >= schema.size()) return "variable index out of range";
      return std::nullopt;
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kDiv:
      if (n.children.size() != 2) return "arithmetic node needs two operands";
      for (const auto& c : n.children) {
        if (auto e = validate_expression(c, schema)) return e;
      }
      return std::nullopt;
    default:
      return std::string("expected an arithmetic expression, found ") +
             (n.kind == NodeKind::kRel ? "a relational term" : "a connective");
  }
}

namespace {

std::optional<std::string> validate_node(const Node& n, const InputSchema& schema,
                                         bool inside_and) {
  switch (n.kind) {
    case NodeKind::kOr:
      if (inside_and) return "disjunction below a conjunction";
      [[fallthrough]];
    case NodeKind::kAnd:
      if (n.children.size() < 2) return "connective with fewer than two operands";
      for (const auto& c : n.children) {
        if (auto e = validate_node(c, schema, inside_and || n.kind == NodeKind::kAnd)) return e;
      }
      return std::nullopt;
    case NodeKind::kRel: {
      if (n.children.size() != 1) return "relational term needs one expression";
      if (auto e = validate_expression(n.children[0], schema)) return e;
      try {
        expression_position(n.children[0], schema);
      } catch (const Error& err) {
        return std::string(err.what());
      }
      return std::nullopt;
    }
    default:
      return "condition root must be a relational term or a connective";
  }
}

}  // namespace

std::optional<std::string> validate(const Condition& cond, const InputSchema& schema,
                                    int max_depth) {
  if (auto e = validate_node(cond.root, schema, false)) return e;
  int d = condition_depth(cond);
  if (max_depth > 0 && d > max_depth) {
    return "depth " + std::to_string(d) + " exceeds " + std::to_string(max_depth);
  }
  return std::nullopt;
}

std::vector<std::vector<const Node*>> dnf(const Node& node) {
  std::vector<std::vector<const Node*>> out;
  struct Rec {
    static void conj(const Node& n, std::vector<const Node*>& acc) {
      if (n.kind == NodeKind::kAnd) {
        for (const auto& c : n.children) conj(c, acc);
      } else {
        acc.push_back(&n);
      }
    }
    static void disj(const Node& n, std::vector<std::vector<const Node*>>& out) {
      if (n.kind == NodeKind::kOr) {
        for (const auto& c : n.children) disj(c, out);
      } else {
        out.emplace_back();
        conj(n, out.back());
      }
    }
  };
  Rec::disj(node, out);
  return out;
}

// ---------------------------------------------------------------------------
// Batch evaluation

DataMatrix DataMatrix::from_inputs(const InputSchema& schema,
                                   const std::vector<TestInput>& inputs) {
  DataMatrix m;
  m.rows = inputs.size();
  m.columns.assign(schema.size(), std::vector<double>(inputs.size()));
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    for (std::size_t v = 0; v < schema.size(); ++v) m.columns[v][r] = inputs[r].values[v];
  }
  return m;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Rows whose value is undefined because of a near-zero denominator are NaN,
// which makes every comparison false.
void batch_exp(const Node& n, const DataMatrix& d, double tol, std::vector<double>& out) {
  const std::size_t rows = d.rows;
  switch (n.kind) {
    case NodeKind::kConst:
      out.assign(rows, n.value);
      return;
    case NodeKind::kVar:
      out.assign(d.columns[n.var].begin(), d.columns[n.var].end());
      return;
    default:
      break;
  }
  std::vector<double> rhs;
  batch_exp(n.children[0], d, tol, out);
  batch_exp(n.children[1], d, tol, rhs);
  switch (n.kind) {
    case NodeKind::kAdd:
      for (std::size_t i = 0; i < rows; ++i) out[i] += rhs[i];
      break;
    case NodeKind::kSub:
      for (std::size_t i = 0; i < rows; ++i) out[i] -= rhs[i];
      break;
    case NodeKind::kMul:
      for (std::size_t i = 0; i < rows; ++i) out[i] *= rhs[i];
      break;
    case NodeKind::kDiv:
      for (std::size_t i = 0; i < rows; ++i) {
        out[i] = std::fabs(rhs[i]) <= tol ? kNaN : out[i] / rhs[i];
      }
      break;
    default:
      break;
  }
}

void batch_node(const Node& n, const DataMatrix& d, double tol, std::vector<std::uint8_t>& out) {
  const std::size_t rows = d.rows;
  if (n.kind == NodeKind::kRel) {
    std::vector<double> v;
    batch_exp(n.children[0], d, tol, v);
    out.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      out[i] = !std::isnan(v[i]) && compare_to_zero(v[i], n.op, tol);
    }
    return;
  }
  bool is_and = n.kind == NodeKind::kAnd;
  out.assign(rows, is_and ? 1 : 0);
  std::vector<std::uint8_t> child;
  for (const auto& c : n.children) {
    batch_node(c, d, tol, child);
    if (is_and) {
      for (std::size_t i = 0; i < rows; ++i) out[i] &= child[i];
    } else {
      for (std::size_t i = 0; i < rows; ++i) out[i] |= child[i];
    }
  }
}

}  // namespace

void evaluate_batch(const Condition& cond, const DataMatrix& data,
                    std::vector<std::uint8_t>& out, double eq_tol) {
  if (cond.root.kind != NodeKind::kRel && cond.root.kind != NodeKind::kAnd &&
      cond.root.kind != NodeKind::kOr) {
    out.assign(data.rows, 0);
    return;
  }
  batch_node(cond.root, data, eq_tol, out);
}

}  // namespace aoracle
