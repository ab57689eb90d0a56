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

#include "aoracle/logic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "aoracle/error.hpp"

namespace aoracle {

double grid_time(double horizon, int n_points, int j) {
  return horizon * static_cast<double>(j) / static_cast<double>(n_points - 1);
}

int slot_of(double t, double horizon, int n_points) {
  if (!(t > 0.0)) return 0;
  if (t >= horizon) return n_points - 1;
  int j = static_cast<int>(std::floor(t * (n_points - 1) / horizon));
  j = std::clamp(j, 0, n_points - 1);
  while (j > 0 && grid_time(horizon, n_points, j) > t) --j;
  while (j + 1 < n_points && grid_time(horizon, n_points, j + 1) <= t) ++j;
  return j;
}

double Signal::value_at(double t, double horizon) const {
  return values.at(static_cast<std::size_t>(
      slot_of(t, horizon, static_cast<int>(values.size()))));
}

TestInput encode_signals(const std::vector<Signal>& signals, const InputSchema& schema) {
  if (!schema.base_variables().empty()) {
    throw Error(ErrorCode::kSchema, "encode_signals needs a signal-only schema");
  }
  TestInput t;
  t.values.assign(schema.size(), 0.0);
  std::vector<bool> seen(schema.signals().size(), false);
  for (const auto& sig : signals) {
    auto s = schema.find_signal(sig.name);
    if (!s) throw Error(ErrorCode::kSchema, "unknown signal '" + sig.name + "'");
    int n = schema.signals()[*s].n_points;
    if (static_cast<int>(sig.values.size()) != n) {
      throw Error(ErrorCode::kLengthMismatch,
                  "signal '" + sig.name + "' has " + std::to_string(sig.values.size()) +
                      " control values, schema expects " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      t.values[schema.control_point_index(*s, j)] = sig.values[static_cast<std::size_t>(j)];
    }
    seen[*s] = true;
  }
  for (std::size_t s = 0; s < seen.size(); ++s) {
    if (!seen[s]) {
      throw Error(ErrorCode::kSchema, "missing signal '" + schema.signals()[s].name + "'");
    }
  }
  return t;
}

std::vector<Signal> decode_signals(const TestInput& input, const InputSchema& schema) {
  std::vector<Signal> out;
  for (std::size_t s = 0; s < schema.signals().size(); ++s) {
    Signal sig{schema.signals()[s].name, {}};
    for (int j = 0; j < schema.signals()[s].n_points; ++j) {
      sig.values.push_back(input.values.at(schema.control_point_index(s, j)));
    }
    out.push_back(std::move(sig));
  }
  return out;
}

namespace {

// Rewrites control-point variables to signal indices; reports the position
// and the common number of control points of the referenced signals.
struct Lifted {
  Node body;
  std::optional<int> position;
  int n_points = 0;
  std::size_t signal = 0;
};

void lift_vars(Node& n, const InputSchema& schema, Lifted& info) {
  if (n.kind == NodeKind::kVar) {
    auto cp = schema.control_point(n.var);
    if (!cp) {
      throw Error(ErrorCode::kNonSignalVariable,
                  "variable '" + schema.variable(n.var).name + "' is not a control point");
    }
    int np = schema.signals()[cp->signal].n_points;
    if (info.position && *info.position != cp->position) {
      throw Error(ErrorCode::kPositionMix, "relational term mixes control-point positions");
    }
    if (info.n_points != 0 && info.n_points != np) {
      throw Error(ErrorCode::kNonUniformSampling,
                  "relational term combines signals with different sampling intervals");
    }
    info.position = cp->position;
    info.n_points = np;
    info.signal = cp->signal;
    n.var = cp->signal;
    return;
  }
  for (auto& c : n.children) lift_vars(c, schema, info);
}

std::vector<const Node*> body_rels(const Node& body) {
  std::vector<const Node*> out;
  if (body.kind == NodeKind::kAnd) {
    for (const auto& c : body.children) {
      auto sub = body_rels(c);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(&body);
  }
  return out;
}

// Signal indices referenced by a lifted body.
void collect_signals(const Node& n, std::set<std::size_t>& out) {
  if (n.kind == NodeKind::kVar) out.insert(n.var);
  for (const auto& c : n.children) collect_signals(c, out);
}

struct Pending {
  std::size_t order;  // index of the earliest source term
  QuantifiedTerm term;
};

std::vector<QuantifiedTerm> translate_conjunct(const std::vector<const Node*>& rels,
                                               const InputSchema& schema) {
  const double b = schema.time_horizon();
  std::vector<Lifted> lifted;
  for (const Node* r : rels) {
    Lifted l;
    l.body = *r;
    lift_vars(l.body, schema, l);
    lifted.push_back(std::move(l));
  }

  // Identical bodies over contiguous slots become one quantifier.
  std::vector<Pending> merged;
  std::vector<bool> done(lifted.size(), false);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    if (done[i]) continue;
    std::map<int, std::size_t> slots;  // slot -> earliest term index
    for (std::size_t k = i; k < lifted.size(); ++k) {
      if (done[k] || lifted[k].body != lifted[i].body) continue;
      done[k] = true;
      int slot = lifted[k].position.value_or(-1);
      slots.emplace(slot, k);
    }
    if (!lifted[i].position) {
      merged.push_back({i, QuantifiedTerm{std::nullopt, lifted[i].body}});
      continue;
    }
    const int n = lifted[i].n_points;
    auto it = slots.begin();
    while (it != slots.end()) {
      int first = it->first;
      int last = first;
      std::size_t order = it->second;
      ++it;
      while (it != slots.end() && it->first == last + 1) {
        last = it->first;
        order = std::min(order, it->second);
        ++it;
      }
      TimeInterval iv;
      iv.lo = grid_time(b, n, first);
      if (last == n - 1) {
        iv.hi = b;
        iv.closed_right = true;
      } else {
        iv.hi = grid_time(b, n, last + 1);
      }
      merged.push_back({order, QuantifiedTerm{iv, lifted[i].body}});
    }
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Pending& a, const Pending& c) { return a.order < c.order; });

  // Bodies sharing one interval become one conjunction.
  std::vector<QuantifiedTerm> out;
  std::vector<bool> used(merged.size(), false);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (used[i]) continue;
    std::vector<Node> bodies{merged[i].term.body};
    for (std::size_t k = i + 1; k < merged.size(); ++k) {
      if (!used[k] && merged[k].term.interval == merged[i].term.interval) {
        used[k] = true;
        bodies.push_back(merged[k].term.body);
      }
    }
    out.push_back(QuantifiedTerm{merged[i].term.interval, expr::all_of(std::move(bodies))});
  }
  return out;
}

bool near(double a, double b, double scale) {
  return std::fabs(a - b) <= 1e-9 * std::max(1.0, scale);
}

// Grid index j with grid_time(j) == t, if any.
std::optional<int> grid_index(double t, double horizon, int n) {
  int j = static_cast<int>(std::lround(t * (n - 1) / horizon));
  if (j < 0 || j > n - 1) return std::nullopt;
  if (!near(grid_time(horizon, n, j), t, horizon)) return std::nullopt;
  return j;
}

void lower_vars(Node& n, const InputSchema& schema, int position) {
  if (n.kind == NodeKind::kVar) {
    n.var = schema.control_point_index(n.var, position);
    return;
  }
  for (auto& c : n.children) lower_vars(c, schema, position);
}

std::string interval_text(const TimeInterval& iv) {
  return "[" + format_number(iv.lo) + "," + format_number(iv.hi) +
         (iv.closed_right ? "]" : ")");
}

}  // namespace

QuantifiedFormula to_logic(const Condition& cond, const InputSchema& schema) {
  if (!schema.has_signals()) {
    throw Error(ErrorCode::kNonSignalVariable, "schema has no signals");
  }
  Node root = canonicalize(cond.root);
  QuantifiedFormula f;
  for (const auto& conj : dnf(root)) f.disjuncts.push_back(translate_conjunct(conj, schema));
  return f;
}

Condition from_logic(const QuantifiedFormula& formula, const InputSchema& schema) {
  const double b = schema.time_horizon();
  std::vector<Node> disjuncts;
  for (const auto& conj : formula.disjuncts) {
    std::vector<Node> rels;
    for (const auto& term : conj) {
      for (const Node* rel : body_rels(term.body)) {
        std::set<std::size_t> sigs;
        collect_signals(*rel, sigs);
        if (sigs.empty()) {
          rels.push_back(*rel);
          continue;
        }
        if (!term.interval) {
          throw Error(ErrorCode::kValidation, "signal reference outside a quantifier");
        }
        int n = 0;
        for (std::size_t s : sigs) {
          if (s >= schema.signals().size()) {
            throw Error(ErrorCode::kValidation, "signal index out of range");
          }
          int np = schema.signals()[s].n_points;
          if (n != 0 && n != np) {
            throw Error(ErrorCode::kNonUniformSampling,
                        "quantified term combines signals with different sampling intervals");
          }
          n = np;
        }
        const TimeInterval& iv = *term.interval;
        auto first = grid_index(iv.lo, b, n);
        if (!first) {
          throw Error(ErrorCode::kGridMisaligned,
                      "interval start " + format_number(iv.lo) + " is not on the grid");
        }
        int last = -1;
        if (iv.closed_right) {
          if (!near(iv.hi, b, b)) {
            throw Error(ErrorCode::kGridMisaligned,
                        "closed interval must end at the time horizon");
          }
          last = n - 1;
        } else {
          auto end = grid_index(iv.hi, b, n);
          if (!end) {
            throw Error(ErrorCode::kGridMisaligned,
                        "interval end " + format_number(iv.hi) + " is not on the grid");
          }
          last = *end - 1;
        }
        for (int j = *first; j <= last; ++j) {
          Node r = *rel;
          lower_vars(r, schema, j);
          rels.push_back(std::move(r));
        }
      }
    }
    if (rels.empty()) rels.push_back(tautology().root);
    disjuncts.push_back(expr::all_of(std::move(rels)));
  }
  if (disjuncts.empty()) {
    // An empty disjunction is unsatisfiable.
    return Condition{expr::rel(expr::constant(1.0), RelOp::kEq)};
  }
  return Condition{expr::any_of(std::move(disjuncts))};
}

std::string print_logic(const QuantifiedFormula& formula, const InputSchema& schema) {
  NameFn name = [&schema](std::size_t s) { return schema.signals()[s].name + "(t)"; };
  std::string out;
  for (std::size_t d = 0; d < formula.disjuncts.size(); ++d) {
    if (d) out += " || ";
    const auto& conj = formula.disjuncts[d];
    for (std::size_t i = 0; i < conj.size(); ++i) {
      if (i) out += " && ";
      out += '(';
      if (conj[i].interval) out += "forall t in " + interval_text(*conj[i].interval) + ": ";
      auto rels = body_rels(conj[i].body);
      for (std::size_t k = 0; k < rels.size(); ++k) {
        if (k) out += " && ";
        out += display_rel(*rels[k], name);
      }
      out += ')';
    }
  }
  return out;
}

bool evaluate_logic(const QuantifiedFormula& formula, const InputSchema& schema,
                    const TestInput& input, double eq_tol) {
  const double b = schema.time_horizon();
  const auto signals = decode_signals(input, schema);
  std::vector<double> at(signals.size());
  auto term_holds = [&](const QuantifiedTerm& term) {
    auto rels = body_rels(term.body);
    if (!term.interval) {
      for (const Node* r : rels) {
        if (!evaluate_rel(*r, at, eq_tol)) return false;
      }
      return true;
    }
    const TimeInterval& iv = *term.interval;
    std::set<std::size_t> sigs;
    collect_signals(term.body, sigs);
    std::set<double> times;
    if (iv.lo < iv.hi) times.insert(iv.lo);
    for (std::size_t s : sigs) {
      int n = schema.signals()[s].n_points;
      for (int j = 0; j < n; ++j) {
        double t = grid_time(b, n, j);
        if (t > iv.lo && t < iv.hi) times.insert(t);
      }
    }
    if (iv.closed_right) times.insert(iv.hi);
    for (double t : times) {
      for (std::size_t s = 0; s < signals.size(); ++s) at[s] = signals[s].value_at(t, b);
      for (const Node* r : rels) {
        if (!evaluate_rel(*r, at, eq_tol)) return false;
      }
    }
    return true;
  };
  for (const auto& conj : formula.disjuncts) {
    if (std::all_of(conj.begin(), conj.end(), term_holds)) return true;
  }
  return false;
}

}  // namespace aoracle
