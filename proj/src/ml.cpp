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

#include "aoracle/ml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "aoracle/error.hpp"

namespace aoracle {

FeatureSpec make_features(const InputSchema& schema,
                          const std::vector<std::pair<std::string, std::string>>& defs) {
  FeatureSpec spec;
  std::set<std::string> names;
  for (const auto& v : schema.variables()) names.insert(v.name);
  for (const auto& [name, text] : defs) {
    bool ident = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
                 std::all_of(name.begin(), name.end(), [](char c) {
                   return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                 });
    if (!ident) throw Error(ErrorCode::kValidation, "invalid feature name '" + name + "'");
    if (!names.insert(name).second) {
      throw Error(ErrorCode::kValidation, "feature name '" + name + "' is already in use");
    }
    Node e = parse_expression(text, schema);
    expression_position(e, schema);
    spec.derived.push_back({name, std::move(e)});
  }
  return spec;
}

FeatureTable::FeatureTable(const InputSchema& schema, const FeatureSpec& spec) {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    names_.push_back(schema.variable(i).name);
    exps_.push_back(expr::var(i));
  }
  for (const auto& d : spec.derived) {
    names_.push_back(d.name);
    exps_.push_back(d.exp);
  }
}

double FeatureTable::value(std::size_t f, const TestInput& input) const {
  if (exps_[f].kind == NodeKind::kVar) return input.values[exps_[f].var];
  auto v = evaluate_expression(exps_[f], input.values);
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

Condition terms_condition(const FeatureTable& table, const std::vector<FeatureTerm>& terms) {
  if (terms.empty()) return tautology();
  std::vector<Node> rels;
  for (const auto& t : terms) {
    Node e = table.exp(t.feature);
    if (t.threshold != 0.0) e = expr::sub(std::move(e), expr::constant(t.threshold));
    rels.push_back(expr::rel(std::move(e), t.op));
  }
  return Condition{expr::all_of(std::move(rels))};
}

bool terms_hold(const FeatureTable& table, const std::vector<FeatureTerm>& terms,
                const TestInput& input) {
  for (const auto& t : terms) {
    double v = table.value(t.feature, input);
    if (std::isnan(v) || !compare_to_zero(v - t.threshold, t.op, kDefaultEqTol)) return false;
  }
  return true;
}

Verdict model_predict(const RuleModel& model, const TestInput& input) {
  for (const auto& r : model.rules) {
    if (evaluate(r.condition, input)) return r.verdict;
  }
  return Verdict::kInconclusive;
}

namespace {

// Feature matrix [feature][row]; undefined values sort last (+inf).
std::vector<std::vector<double>> feature_matrix(const FeatureTable& table, const LabeledSet& ts) {
  std::vector<std::vector<double>> m(table.size(), std::vector<double>(ts.rows.size()));
  for (std::size_t f = 0; f < table.size(); ++f) {
    for (std::size_t r = 0; r < ts.rows.size(); ++r) {
      double v = table.value(f, ts.rows[r].input);
      m[f][r] = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }
  }
  return m;
}

double midpoint(double a, double b) {
  double m = a + (b - a) / 2.0;
  return (m >= b || m < a) ? a : m;
}

struct Bound {
  std::optional<double> le;  // tightest `<=` threshold
  std::optional<double> gt;  // tightest `>` threshold
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledSet& ts, const FeatureTable& table, const TreeParams& p)
      : ts_(ts), table_(table), p_(p), x_(feature_matrix(table, ts)) {}

  void grow(const std::vector<std::size_t>& rows, int depth,
            std::vector<std::pair<std::size_t, Bound>> path, RuleModel& out) {
    std::size_t fails = 0;
    for (auto r : rows) fails += ts_.rows[r].verdict == Verdict::kFail;
    const std::size_t n = rows.size();
    const std::size_t passes = n - fails;
    auto make_leaf = [&] {
      Rule rule;
      rule.verdict = fails >= passes ? Verdict::kFail : Verdict::kPass;
      rule.confidence = n ? static_cast<double>(std::max(fails, passes)) / static_cast<double>(n) : 0.0;
      for (const auto& [f, b] : path) {
        if (b.le) rule.terms.push_back({f, RelOp::kLe, *b.le});
        if (b.gt) rule.terms.push_back({f, RelOp::kGt, *b.gt});
      }
      rule.condition = terms_condition(table_, rule.terms);
      out.rules.push_back(std::move(rule));
    };
    if (fails == 0 || passes == 0 || depth >= p_.max_depth ||
        static_cast<int>(n) < p_.min_split) {
      make_leaf();
      return;
    }
    const double parent = gini(fails, n);
    double best_score = parent;
    std::size_t best_f = 0;
    double best_t = 0.0;
    bool found = false;
    std::vector<std::size_t> order(rows);
    for (std::size_t f = 0; f < table_.size(); ++f) {
      const auto& col = x_[f];
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
      std::size_t left_f = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_f += ts_.rows[order[i]].verdict == Verdict::kFail;
        double a = col[order[i]], b = col[order[i + 1]];
        if (!(a < b) || std::isinf(b)) continue;
        std::size_t nl = i + 1, nr = n - nl;
        if (static_cast<int>(nl) < p_.min_leaf || static_cast<int>(nr) < p_.min_leaf) continue;
        double score = (static_cast<double>(nl) * gini(left_f, nl) +
                        static_cast<double>(nr) * gini(fails - left_f, nr)) /
                       static_cast<double>(n);
        if (score < best_score - 1e-12) {
          best_score = score;
          best_f = f;
          best_t = midpoint(a, b);
          found = true;
        }
      }
    }
    if (!found) {
      make_leaf();
      return;
    }
    std::vector<std::size_t> left, right;
    for (auto r : rows) (x_[best_f][r] <= best_t ? left : right).push_back(r);
    auto with = [&](bool le) {
      auto p = path;
      auto it = std::find_if(p.begin(), p.end(), [&](const auto& e) { return e.first == best_f; });
      if (it == p.end()) {
        p.push_back({best_f, Bound{}});
        it = p.end() - 1;
      }
      if (le) {
        it->second.le = it->second.le ? std::min(*it->second.le, best_t) : best_t;
      } else {
        it->second.gt = it->second.gt ? std::max(*it->second.gt, best_t) : best_t;
      }
      return p;
    };
    grow(left, depth + 1, with(true), out);
    grow(right, depth + 1, with(false), out);
  }

 private:
  static double gini(std::size_t fails, std::size_t n) {
    if (n == 0) return 0.0;
    double q = static_cast<double>(fails) / static_cast<double>(n);
    return 2.0 * q * (1.0 - q);
  }

  const LabeledSet& ts_;
  const FeatureTable& table_;
  const TreeParams& p_;
  std::vector<std::vector<double>> x_;
};

}  // namespace

RuleModel fit_decision_tree(const LabeledSet& ts, const FeatureSpec& features,
                            const TreeParams& params) {
  if (ts.rows.empty()) throw Error(ErrorCode::kValidation, "empty training set");
  FeatureTable table(ts.schema, features);
  TreeBuilder builder(ts, table, params);
  std::vector<std::size_t> rows(ts.rows.size());
  std::iota(rows.begin(), rows.end(), 0);
  RuleModel model;
  builder.grow(rows, 0, {}, model);
  return model;
}

namespace {

struct Candidate {
  FeatureTerm term;
  std::size_t covered = 0;
  std::size_t hits = 0;  // covered rows of the target class
};

// Precision a/b > c/d with ties broken by coverage.
bool better(const Candidate& x, const Candidate& y) {
  unsigned long long lhs = static_cast<unsigned long long>(x.hits) * y.covered;
  unsigned long long rhs = static_cast<unsigned long long>(y.hits) * x.covered;
  if (lhs != rhs) return lhs > rhs;
  return x.covered > y.covered;
}

}  // namespace

RuleModel fit_decision_rules(const LabeledSet& ts, const FeatureSpec& features,
                             const RuleParams& params) {
  if (ts.rows.empty()) throw Error(ErrorCode::kValidation, "empty training set");
  FeatureTable table(ts.schema, features);
  const auto x = feature_matrix(table, ts);
  const std::size_t min_cov = std::max<std::size_t>(1, params.min_coverage);
  RuleModel model;

  for (Verdict target : {Verdict::kFail, Verdict::kPass}) {
    std::vector<bool> alive(ts.rows.size(), true);
    while (true) {
      std::vector<std::size_t> covered;
      for (std::size_t r = 0; r < ts.rows.size(); ++r) {
        if (alive[r]) covered.push_back(r);
      }
      std::size_t targets = 0;
      for (auto r : covered) targets += ts.rows[r].verdict == target;
      if (targets == 0) break;

      std::vector<FeatureTerm> terms;
      Candidate current{{}, covered.size(), targets};
      while (static_cast<int>(terms.size()) < params.max_terms) {
        std::optional<Candidate> best;
        std::vector<std::size_t> order(covered);
        for (std::size_t f = 0; f < table.size(); ++f) {
          const auto& col = x[f];
          std::stable_sort(order.begin(), order.end(),
                           [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
          std::size_t prefix_hits = 0;
          for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            prefix_hits += ts.rows[order[i]].verdict == target;
            double a = col[order[i]], b = col[order[i + 1]];
            if (!(a < b) || std::isinf(b)) continue;
            double t = midpoint(a, b);
            Candidate le{{f, RelOp::kLe, t}, i + 1, prefix_hits};
            Candidate gt{{f, RelOp::kGt, t}, order.size() - i - 1, current.hits - prefix_hits};
            for (const Candidate& c : {le, gt}) {
              if (c.covered < min_cov || c.hits == 0) continue;
              if (!best || better(c, *best)) best = c;
            }
          }
        }
        if (!best) break;
        bool improves = static_cast<unsigned long long>(best->hits) * current.covered >
                        static_cast<unsigned long long>(current.hits) * best->covered;
        if (!terms.empty() && !improves) break;
        terms.push_back(best->term);
        std::vector<std::size_t> next;
        for (auto r : covered) {
          double v = x[best->term.feature][r];
          bool in = best->term.op == RelOp::kLe ? v <= best->term.threshold
                                                : v > best->term.threshold;
          if (in) next.push_back(r);
        }
        covered = std::move(next);
        current = *best;
        if (static_cast<double>(current.hits) >=
            params.min_precision * static_cast<double>(current.covered) - 1e-12) {
          break;
        }
      }
      if (terms.empty() || covered.size() < min_cov || current.hits == 0) break;

      Rule rule;
      rule.terms = terms;
      rule.verdict = target;
      rule.condition = terms_condition(table, terms);
      std::size_t sat = 0, agree = 0;
      for (const auto& row : ts.rows) {
        if (evaluate(rule.condition, row.input)) {
          ++sat;
          agree += row.verdict == target;
        }
      }
      rule.confidence = sat ? static_cast<double>(agree) / static_cast<double>(sat) : 0.0;
      model.rules.push_back(std::move(rule));
      for (auto r : covered) {
        if (ts.rows[r].verdict == target) alive[r] = false;
      }
    }
  }
  return model;
}

std::vector<int> cv_folds(std::size_t n, int k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
  std::vector<int> folds(n);
  for (std::size_t pos = 0; pos < n; ++pos) folds[idx[pos]] = static_cast<int>(pos % static_cast<std::size_t>(k));
  return folds;
}

}  // namespace aoracle
