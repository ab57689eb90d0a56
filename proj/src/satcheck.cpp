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

#include "aoracle/satcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aoracle/rng.hpp"

namespace aoracle {

const char* to_string(SatStatus s) {
  switch (s) {
    case SatStatus::kSat: return "sat";
    case SatStatus::kUnsat: return "unsat";
    case SatStatus::kUnknown: return "unknown";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::isnan(x) ? -kInf : (std::isfinite(x) ? std::nextafter(x, -kInf) : x); }
double up(double x) { return std::isnan(x) ? kInf : (std::isfinite(x) ? std::nextafter(x, kInf) : x); }

Interval meet(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

bool excludes_zero(Interval a) { return a.lo > 0.0 || a.hi < 0.0; }

// Directed rounding of a single operation. `err` is the sign of
// (exact - rounded) from an error-free transform, NaN when the transform is
// not trustworthy; then both ends move outward.
double lower_of(double r, double err) {
  if (!std::isfinite(r) || !std::isfinite(err)) return down(r);
  return err < 0.0 ? down(r) : r;
}
double upper_of(double r, double err) {
  if (!std::isfinite(r) || !std::isfinite(err)) return up(r);
  return err > 0.0 ? up(r) : r;
}

// fma residuals are exact unless the result is near the underflow range.
bool tiny(double r, double a, double b) {
  return a != 0.0 && b != 0.0 && std::fabs(r) < 1e-290;
}

double sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}
double add_down(double a, double b) { double s = a + b; return lower_of(s, sum_err(a, b, s)); }
double add_up(double a, double b) { double s = a + b; return upper_of(s, sum_err(a, b, s)); }

double mul_err(double a, double b, double p) {
  return tiny(p, a, b) ? std::nan("") : std::fma(a, b, -p);
}
// Sign of a / b - q.
double div_err(double a, double b, double q) {
  return tiny(q, a, b) ? std::nan("") : std::fma(-q, b, a) * (b < 0.0 ? -1.0 : 1.0);
}

Interval iadd(Interval a, Interval b) { return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)}; }
Interval isub(Interval a, Interval b) { return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)}; }

Interval imul(Interval a, Interval b) {
  const double xs[4] = {a.lo, a.lo, a.hi, a.hi};
  const double ys[4] = {b.lo, b.hi, b.lo, b.hi};
  double lo = kInf, hi = -kInf;
  for (int i = 0; i < 4; ++i) {
    double p = xs[i] * ys[i];
    if (std::isnan(p)) return Interval::whole();
    double e = mul_err(xs[i], ys[i], p);
    lo = std::min(lo, lower_of(p, e));
    hi = std::max(hi, upper_of(p, e));
  }
  return {lo, hi};
}

// Requires b to exclude zero.
Interval idiv(Interval a, Interval b) {
  const double xs[4] = {a.lo, a.lo, a.hi, a.hi};
  const double ys[4] = {b.lo, b.hi, b.lo, b.hi};
  double lo = kInf, hi = -kInf;
  for (int i = 0; i < 4; ++i) {
    double q = xs[i] / ys[i];
    if (std::isnan(q)) return Interval::whole();
    double e = div_err(xs[i], ys[i], q);
    lo = std::min(lo, lower_of(q, e));
    hi = std::max(hi, upper_of(q, e));
  }
  return {lo, hi};
}

struct Ann {
  Interval v;
  std::vector<Ann> k;
};

Ann forward(const Node& n, const Box& box, double tol) {
  Ann a;
  switch (n.kind) {
    case NodeKind::kConst:
      a.v = {n.value, n.value};
      return a;
    case NodeKind::kVar:
      a.v = box[n.var];
      return a;
    default:
      break;
  }
  a.k.push_back(forward(n.children[0], box, tol));
  a.k.push_back(forward(n.children[1], box, tol));
  const Interval x = a.k[0].v, y = a.k[1].v;
  switch (n.kind) {
    case NodeKind::kAdd: a.v = iadd(x, y); break;
    case NodeKind::kSub: a.v = isub(x, y); break;
    case NodeKind::kMul: a.v = imul(x, y); break;
    case NodeKind::kDiv:
      a.v = (y.lo <= tol && y.hi >= -tol) ? Interval::whole() : idiv(x, y);
      break;
    default: a.v = Interval::whole();
  }
  return a;
}

bool backward(const Node& n, const Ann& a, Interval target, Box& box) {
  Interval z = meet(a.v, target);
  if (z.empty()) return false;
  switch (n.kind) {
    case NodeKind::kConst:
      return true;
    case NodeKind::kVar:
      box[n.var] = meet(box[n.var], z);
      return !box[n.var].empty();
    default:
      break;
  }
  const Interval x = a.k[0].v, y = a.k[1].v;
  Interval nx = x, ny = y;
  switch (n.kind) {
    case NodeKind::kAdd:
      nx = meet(x, isub(z, y));
      ny = meet(y, isub(z, x));
      break;
    case NodeKind::kSub:
      nx = meet(x, iadd(z, y));
      ny = meet(y, isub(x, z));
      break;
    case NodeKind::kMul:
      if (excludes_zero(y)) nx = meet(x, idiv(z, y));
      if (excludes_zero(x)) ny = meet(y, idiv(z, x));
      break;
    case NodeKind::kDiv:
      // Defined points have a nonzero denominator, so x = z * y there.
      nx = meet(x, imul(z, y));
      if (excludes_zero(z)) ny = meet(y, idiv(x, z));
      break;
    default:
      break;
  }
  if (nx.empty() || ny.empty()) return false;
  return backward(n.children[0], a.k[0], nx, box) && backward(n.children[1], a.k[1], ny, box);
}

Interval rel_target(RelOp op, double tol) {
  switch (op) {
    case RelOp::kLt:
    case RelOp::kLe: return {-kInf, 0.0};
    case RelOp::kGt:
    case RelOp::kGe: return {0.0, kInf};
    case RelOp::kEq: return {-tol, tol};
    case RelOp::kNe: return Interval::whole();
  }
  return Interval::whole();
}

bool violated(Interval v, RelOp op, double tol) {
  switch (op) {
    case RelOp::kLt: return v.lo >= 0.0;
    case RelOp::kLe: return v.lo > 0.0;
    case RelOp::kGt: return v.hi <= 0.0;
    case RelOp::kGe: return v.hi < 0.0;
    case RelOp::kEq: return v.lo > tol || v.hi < -tol;
    case RelOp::kNe: return v.lo >= -tol && v.hi <= tol;
  }
  return false;
}

// Narrows the box; false once some term is shown to be violated everywhere.
bool contract(const std::vector<const Node*>& rels, Box& box, double tol) {
  for (int iter = 0; iter < 8; ++iter) {
    Box before = box;
    for (const Node* r : rels) {
      Ann a = forward(r->children[0], box, tol);
      if (violated(a.v, r->op, tol)) return false;
      if (!backward(r->children[0], a, rel_target(r->op, tol), box)) return false;
    }
    bool changed = false;
    for (std::size_t i = 0; i < box.size() && !changed; ++i) {
      double w = before[i].hi - before[i].lo;
      double eps = 1e-9 * std::max(1.0, std::fabs(w));
      changed = box[i].lo > before[i].lo + eps || box[i].hi < before[i].hi - eps;
    }
    if (!changed) break;
  }
  return true;
}

void referenced(const Node& n, std::vector<bool>& used) {
  if (n.kind == NodeKind::kVar) used[n.var] = true;
  for (const auto& c : n.children) referenced(c, used);
}

}  // namespace

Interval Interval::whole() { return {-kInf, kInf}; }

Box schema_box(const InputSchema& schema) {
  Box b;
  for (const auto& v : schema.variables()) b.push_back({v.lower, v.upper});
  return b;
}

Interval enclose(const Node& exp, const Box& box, double eq_tol) {
  return forward(exp, box, eq_tol).v;
}

bool refute_conjunction(const std::vector<const Node*>& rels, const Box& box, double eq_tol,
                        int node_budget) {
  std::vector<bool> used(box.size(), false);
  for (const Node* r : rels) referenced(*r, used);
  std::vector<Box> stack{box};
  int nodes = 0;
  while (!stack.empty()) {
    Box b = std::move(stack.back());
    stack.pop_back();
    if (++nodes > node_budget) return false;
    if (!contract(rels, b, eq_tol)) continue;
    std::size_t best = box.size();
    double best_w = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!used[i]) continue;
      double full = box[i].hi - box[i].lo;
      double w = full > 0.0 ? (b[i].hi - b[i].lo) / full : 0.0;
      if (w > best_w) {
        best_w = w;
        best = i;
      }
    }
    if (best == box.size() || best_w < 1e-12) return false;
    double mid = b[best].lo + 0.5 * (b[best].hi - b[best].lo);
    Box left = b, right = b;
    left[best].hi = mid;
    right[best].lo = mid;
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  return true;
}

bool refute(const Condition& cond, const Box& box, double eq_tol, int node_budget) {
  for (const auto& conj : dnf(cond.root)) {
    if (!refute_conjunction(conj, box, eq_tol, node_budget)) return false;
  }
  return true;
}

SatChecker::SatChecker(const InputSchema& schema, const SatBudget& budget)
    : schema_(schema), budget_(budget), box_(schema_box(schema)) {
  const std::size_t d = schema_.size();
  std::size_t lattice = 0;
  if (static_cast<int>(d) <= budget_.max_grid_dims && budget_.grid_per_dim >= 1) {
    lattice = 1;
    for (std::size_t i = 0; i < d; ++i) lattice *= static_cast<std::size_t>(budget_.grid_per_dim);
  }
  const std::size_t random = static_cast<std::size_t>(std::max(0, budget_.samples));
  points_.rows = random + lattice;
  points_.columns.assign(d, std::vector<double>(points_.rows));
  Rng rng(budget_.seed);
  for (std::size_t r = 0; r < random; ++r) {
    for (std::size_t v = 0; v < d; ++v) {
      points_.columns[v][r] = uniform(rng, box_[v].lo, box_[v].hi);
    }
  }
  const int g = budget_.grid_per_dim;
  for (std::size_t k = 0; k < lattice; ++k) {
    std::size_t rest = k;
    for (std::size_t v = 0; v < d; ++v) {
      int step = static_cast<int>(rest % static_cast<std::size_t>(g));
      rest /= static_cast<std::size_t>(g);
      double x = g == 1 ? 0.5 * (box_[v].lo + box_[v].hi)
                        : box_[v].lo + (box_[v].hi - box_[v].lo) * step / (g - 1);
      points_.columns[v][random + k] = x;
    }
  }
}

std::vector<std::uint8_t> SatChecker::mask(const Condition& cond) const {
  std::vector<std::uint8_t> m;
  evaluate_batch(cond, points_, m, budget_.eq_tol);
  return m;
}

TestInput SatChecker::row(std::size_t r) const {
  TestInput t;
  t.values.reserve(points_.columns.size());
  for (const auto& col : points_.columns) t.values.push_back(col[r]);
  return t;
}

SatResult SatChecker::check(const Condition& c1, const Condition& c2) const {
  return check(c1, mask(c1), c2, mask(c2));
}

SatResult SatChecker::check(const Condition& c1, const std::vector<std::uint8_t>& m1,
                            const Condition& c2, const std::vector<std::uint8_t>& m2) const {
  for (std::size_t r = 0; r < points_.rows; ++r) {
    if (!(m1[r] && m2[r])) continue;
    TestInput w = row(r);
    if (evaluate(c1, w, budget_.eq_tol) && evaluate(c2, w, budget_.eq_tol)) {
      return {SatStatus::kSat, std::move(w)};
    }
  }
  for (const auto& a : dnf(c1.root)) {
    for (const auto& b : dnf(c2.root)) {
      std::vector<const Node*> rels = a;
      rels.insert(rels.end(), b.begin(), b.end());
      if (!refute_conjunction(rels, box_, budget_.eq_tol, budget_.refute_nodes)) {
        return {SatStatus::kUnknown, std::nullopt};
      }
    }
  }
  return {SatStatus::kUnsat, std::nullopt};
}

SatResult check_conjunction(const Condition& c1, const Condition& c2, const InputSchema& schema,
                            const SatBudget& budget) {
  return SatChecker(schema, budget).check(c1, c2);
}

}  // namespace aoracle
