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

#include "aoracle/gp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "aoracle/error.hpp"
#include "aoracle/parallel.hpp"

namespace aoracle {

const char* to_string(FitnessKind kind) {
  switch (kind) {
    case FitnessKind::kOchiai: return "ochiai";
    case FitnessKind::kTarantula: return "tarantula";
    case FitnessKind::kNaish: return "naish";
  }
  return "?";
}

std::optional<FitnessKind> parse_fitness(std::string_view name) {
  if (name == "ochiai") return FitnessKind::kOchiai;
  if (name == "tarantula") return FitnessKind::kTarantula;
  if (name == "naish") return FitnessKind::kNaish;
  return std::nullopt;
}

double fitness_ochiai(double c_f, double c_p, double n_f) {
  if (c_f <= 0.0 || n_f <= 0.0) return 0.0;
  return c_f / std::sqrt(n_f * (c_p + c_f));
}

double fitness_tarantula(double c_f, double c_p, double n_f, double n_p) {
  double rf = n_f > 0.0 ? c_f / n_f : 0.0;
  double rp = n_p > 0.0 ? c_p / n_p : 0.0;
  if (rf + rp == 0.0) return 0.0;
  return rf / (rf + rp);
}

double fitness_naish(double c_f, double c_p, double n_f, double n_p) {
  double rf = n_f > 0.0 ? c_f / n_f : 0.0;
  return rf - c_p / (1.0 + n_p);
}

FitnessFn fitness_function(FitnessKind kind) {
  switch (kind) {
    case FitnessKind::kOchiai:
      return [](const Spectrum& s) {
        return fitness_ochiai(static_cast<double>(s.c_f), static_cast<double>(s.c_p),
                              static_cast<double>(s.n_f));
      };
    case FitnessKind::kTarantula:
      return [](const Spectrum& s) {
        return fitness_tarantula(static_cast<double>(s.c_f), static_cast<double>(s.c_p),
                                 static_cast<double>(s.n_f), static_cast<double>(s.n_p));
      };
    case FitnessKind::kNaish:
      return [](const Spectrum& s) {
        return fitness_naish(static_cast<double>(s.c_f), static_cast<double>(s.c_p),
                             static_cast<double>(s.n_f), static_cast<double>(s.n_p));
      };
  }
  return {};
}

FitnessFn pass_dual(FitnessFn fn) {
  return [fn = std::move(fn)](const Spectrum& s) {
    return fn(Spectrum{s.c_f, s.c_p, s.n_f, s.n_p});
  };
}

FitnessFn fitness_for(FitnessKind kind, Verdict target) {
  auto fn = fitness_function(kind);
  return target == Verdict::kPass ? pass_dual(std::move(fn)) : fn;
}

SpectrumCounter::SpectrumCounter(const LabeledSet& ts) : data_(ts.matrix()) {
  is_fail_.reserve(ts.rows.size());
  for (const auto& r : ts.rows) {
    bool fail = r.verdict == Verdict::kFail;
    is_fail_.push_back(fail);
    fail ? ++n_f_ : ++n_p_;
  }
}

Spectrum SpectrumCounter::count(const Condition& cond) const {
  std::vector<std::uint8_t> mask;
  evaluate_batch(cond, data_, mask);
  Spectrum s{0, 0, n_p_, n_f_};
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) is_fail_[i] ? ++s.c_f : ++s.c_p;
  }
  return s;
}

Spectrum count_spectrum(const Condition& cond, const LabeledSet& ts) {
  return SpectrumCounter(ts).count(cond);
}

void check_config(const GpConfig& cfg) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kValidation, what); };
  if (cfg.pop_size < 1) bad("pop_size must be at least 1");
  if (cfg.generations < 0) bad("generations must be nonnegative");
  if (cfg.tournament_size < 1 || cfg.tournament_size > cfg.pop_size) {
    bad("tournament_size must lie in [1, pop_size]");
  }
  if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) bad("mutation_rate outside [0,1]");
  if (!(cfg.crossover_rate >= 0.0 && cfg.crossover_rate <= 1.0)) bad("crossover_rate outside [0,1]");
  if (cfg.max_depth < 1) bad("max_depth must be at least 1");
  if (cfg.best_k < 1) bad("best_k must be at least 1");
  if (cfg.retry_limit < 0) bad("retry_limit must be nonnegative");
  if (cfg.target == Verdict::kInconclusive) bad("target verdict must be pass or fail");
  if (cfg.const_range && !(cfg.const_range->first <= cfg.const_range->second)) {
    bad("const_range is empty");
  }
}

GrowSpec grow_spec(const InputSchema& schema, const GpConfig& cfg) {
  GrowSpec g;
  g.schema = &schema;
  g.max_depth = cfg.max_depth;
  if (cfg.const_range) {
    g.const_lo = cfg.const_range->first;
    g.const_hi = cfg.const_range->second;
  } else if (schema.size() > 0) {
    g.const_lo = schema.variable(0).lower;
    g.const_hi = schema.variable(0).upper;
    for (const auto& v : schema.variables()) {
      g.const_lo = std::min(g.const_lo, v.lower);
      g.const_hi = std::max(g.const_hi, v.upper);
    }
  }
  return g;
}

namespace {

constexpr double kOrProb = 0.3;
constexpr double kAndProb = 0.5;
constexpr double kTerminalProb = 0.5;
constexpr double kVarProb = 0.6;

class Grower {
 public:
  Grower(const GrowSpec& spec, Rng& rng) : spec_(spec), rng_(rng) {
    const InputSchema& s = *spec_.schema;
    int positions = std::max(1, s.max_points());
    by_position_.resize(static_cast<std::size_t>(positions));
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto cp = s.control_point(i);
      if (!cp) {
        for (auto& v : by_position_) v.push_back(i);
      } else {
        by_position_[static_cast<std::size_t>(cp->position)].push_back(i);
      }
    }
  }

  int random_position() { return static_cast<int>(uniform_index(rng_, by_position_.size())); }

  Node condition(int d) {
    if (d >= 2 && bernoulli(rng_, kOrProb)) return disjunction(d);
    if (d >= 2 && bernoulli(rng_, kAndProb)) return conjunction(d);
    return rel(d, random_position());
  }

  Node disjunction(int d) {
    std::vector<Node> kids;
    for (int i = 0; i < 2; ++i) {
      kids.push_back(d - 1 >= 2 && bernoulli(rng_, kAndProb) ? conjunction(d - 1)
                                                              : rel(d - 1, random_position()));
    }
    return expr::any_of(std::move(kids));
  }

  Node conjunction(int d) {
    std::vector<Node> kids;
    int k = bernoulli(rng_, 0.3) ? 3 : 2;
    for (int i = 0; i < k; ++i) kids.push_back(rel(d - 1, random_position()));
    return expr::all_of(std::move(kids));
  }

  Node rel(int d, int position) {
    Node lhs = exp(d - 1, position, false);
    auto op = static_cast<RelOp>(uniform_index(rng_, 6));
    double c = uniform(rng_, spec_.const_lo, spec_.const_hi);
    if (c == 0.0) return expr::rel(std::move(lhs), op);
    return expr::rel(expr::sub(std::move(lhs), expr::constant(c)), op);
  }

  Node exp(int d, int position, bool allow_const) {
    const auto& vars = by_position_[static_cast<std::size_t>(position)];
    if (d <= 0 || bernoulli(rng_, kTerminalProb)) {
      bool use_var = !vars.empty() && (!allow_const || bernoulli(rng_, kVarProb));
      if (use_var) return expr::var(vars[uniform_index(rng_, vars.size())]);
      return expr::constant(uniform(rng_, spec_.const_lo, spec_.const_hi));
    }
    static constexpr NodeKind kOps[] = {NodeKind::kAdd, NodeKind::kSub, NodeKind::kMul,
                                        NodeKind::kDiv};
    NodeKind k = kOps[uniform_index(rng_, 4)];
    Node a = exp(d - 1, position, true);
    Node b = exp(d - 1, position, true);
    return expr::binary(k, std::move(a), std::move(b));
  }

  Rng& rng() { return rng_; }

 private:
  const GrowSpec& spec_;
  Rng& rng_;
  std::vector<std::vector<std::size_t>> by_position_;
};

void collect_preorder(const Node& n, std::vector<const Node*>& out) {
  out.push_back(&n);
  for (const auto& c : n.children) collect_preorder(c, out);
}

bool replace_at(Node& n, std::size_t& counter, std::size_t index, Node& replacement) {
  if (counter == index) {
    n = std::move(replacement);
    return true;
  }
  for (auto& c : n.children) {
    ++counter;
    if (replace_at(c, counter, index, replacement)) return true;
  }
  return false;
}

// Ancestors of the node at `index`, root first.
bool path_to(const Node& n, std::size_t& counter, std::size_t index,
             std::vector<const Node*>& path) {
  if (counter == index) return true;
  path.push_back(&n);
  for (const auto& c : n.children) {
    ++counter;
    if (path_to(c, counter, index, path)) return true;
  }
  path.pop_back();
  return false;
}

bool acceptable(const Condition& c, const GrowSpec& spec) {
  return !validate(c, *spec.schema, spec.max_depth).has_value();
}

}  // namespace

Condition grow_random(const GrowSpec& spec, Rng& rng) {
  Grower g(spec, rng);
  return Condition{g.condition(spec.max_depth)};
}

std::vector<const Node*> preorder(const Node& root) {
  std::vector<const Node*> out;
  collect_preorder(root, out);
  return out;
}

Node replace_subtree(const Node& root, std::size_t index, Node replacement) {
  Node copy = root;
  std::size_t counter = 0;
  if (!replace_at(copy, counter, index, replacement)) {
    throw Error(ErrorCode::kValidation, "subtree index out of range");
  }
  return copy;
}

std::pair<Node, Node> swap_subtrees(const Node& a, std::size_t ia, const Node& b,
                                    std::size_t ib) {
  auto pa = preorder(a);
  auto pb = preorder(b);
  if (ia >= pa.size() || ib >= pb.size()) {
    throw Error(ErrorCode::kValidation, "subtree index out of range");
  }
  Node sa = *pa[ia];
  Node sb = *pb[ib];
  return {replace_subtree(a, ia, std::move(sb)), replace_subtree(b, ib, std::move(sa))};
}

std::pair<Condition, Condition> crossover_one_point(const Condition& a, const Condition& b,
                                                    const GrowSpec& spec, int retry_limit,
                                                    Rng& rng) {
  auto na = preorder(a.root);
  auto nb = preorder(b.root);
  for (int attempt = 0; attempt < retry_limit; ++attempt) {
    std::size_t i = uniform_index(rng, na.size());
    Nonterminal cls = nonterminal_of(na[i]->kind);
    std::vector<std::size_t> same;
    for (std::size_t j = 0; j < nb.size(); ++j) {
      if (nonterminal_of(nb[j]->kind) == cls) same.push_back(j);
    }
    if (same.empty()) continue;
    std::size_t j = same[uniform_index(rng, same.size())];
    auto [x, y] = swap_subtrees(a.root, i, b.root, j);
    Condition cx = canonicalize(Condition{std::move(x)});
    Condition cy = canonicalize(Condition{std::move(y)});
    if (acceptable(cx, spec) && acceptable(cy, spec)) return {std::move(cx), std::move(cy)};
  }
  return {a, b};
}

Condition mutate_one_point(const Condition& a, const GrowSpec& spec, int retry_limit, Rng& rng) {
  auto nodes = preorder(a.root);
  Grower g(spec, rng);
  for (int attempt = 0; attempt < retry_limit; ++attempt) {
    std::size_t i = uniform_index(rng, nodes.size());
    std::vector<const Node*> path;
    std::size_t counter = 0;
    path_to(a.root, counter, i, path);
    int budget = spec.max_depth - static_cast<int>(path.size());
    const Node& target = *nodes[i];
    Node fresh;
    switch (nonterminal_of(target.kind)) {
      case Nonterminal::kOrTerm:
        if (budget < 2) continue;
        fresh = g.disjunction(budget);
        break;
      case Nonterminal::kAndTerm:
        if (budget < 2) continue;
        fresh = g.conjunction(budget);
        break;
      case Nonterminal::kRelTerm:
        if (budget < 1) continue;
        fresh = g.rel(budget, g.random_position());
        break;
      case Nonterminal::kExp: {
        const Node* enclosing = nullptr;
        for (const Node* p : path) {
          if (p->kind == NodeKind::kRel) enclosing = p;
        }
        std::optional<int> pos =
            enclosing ? expression_position(enclosing->children[0], *spec.schema) : std::nullopt;
        fresh = g.exp(std::max(0, budget), pos ? *pos : g.random_position(), true);
        break;
      }
    }
    Condition c = canonicalize(Condition{replace_subtree(a.root, i, std::move(fresh))});
    if (acceptable(c, spec)) return c;
  }
  return a;
}

namespace {

struct Scorer {
  const SpectrumCounter& counter;
  const FitnessFn& fn;
  unsigned jobs;

  std::vector<ScoredCondition> operator()(std::vector<Condition> pop) const {
    std::vector<ScoredCondition> out(pop.size());
    parallel_for(pop.size(), jobs, [&](std::size_t i) {
      Spectrum s = counter.count(pop[i]);
      out[i] = ScoredCondition{std::move(pop[i]), fn(s), s.c_p, s.c_f};
    });
    return out;
  }
};

std::size_t tournament(const std::vector<ScoredCondition>& pop, int size, Rng& rng) {
  std::size_t best = uniform_index(rng, pop.size());
  for (int k = 1; k < size; ++k) {
    std::size_t c = uniform_index(rng, pop.size());
    if (pop[c].fitness > pop[best].fitness) best = c;
  }
  return best;
}

GenerationStats stats(int gen, const std::vector<ScoredCondition>& pop) {
  GenerationStats s{gen, pop.front().fitness, 0.0};
  for (const auto& p : pop) {
    s.best = std::max(s.best, p.fitness);
    s.mean += p.fitness;
  }
  s.mean /= static_cast<double>(pop.size());
  return s;
}

}  // namespace

EvolveResult evolve(const LabeledSet& ts, const GpConfig& cfg, const PopulationObserver& observer) {
  check_config(cfg);
  if (ts.count(cfg.target) == 0) {
    throw Error(ErrorCode::kEmptyTargetClass,
                std::string("training set has no ") + to_string(cfg.target) + " rows");
  }
  const GrowSpec spec = grow_spec(ts.schema, cfg);
  const SpectrumCounter counter(ts);
  const FitnessFn fn = fitness_for(cfg.fitness, cfg.target);
  const Scorer score{counter, fn, cfg.jobs};
  Rng rng(cfg.seed);

  std::vector<Condition> initial;
  for (int i = 0; i < cfg.pop_size; ++i) initial.push_back(grow_random(spec, rng));
  std::vector<ScoredCondition> pop = score(std::move(initial));

  auto best_of = [](const std::vector<ScoredCondition>& v) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].fitness > v[b].fitness) b = i;
    }
    return v[b];
  };
  ScoredCondition elite = best_of(pop);
  EvolveResult result;
  result.progress.push_back(stats(0, pop));
  if (observer) observer(0, pop);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<Condition> children;
    while (static_cast<int>(children.size()) < cfg.pop_size) {
      const Condition& p1 = pop[tournament(pop, cfg.tournament_size, rng)].condition;
      const Condition& p2 = pop[tournament(pop, cfg.tournament_size, rng)].condition;
      std::pair<Condition, Condition> kids{p1, p2};
      if (bernoulli(rng, cfg.crossover_rate)) {
        kids = crossover_one_point(p1, p2, spec, cfg.retry_limit, rng);
      }
      for (Condition* c : {&kids.first, &kids.second}) {
        if (bernoulli(rng, cfg.mutation_rate)) *c = mutate_one_point(*c, spec, cfg.retry_limit, rng);
      }
      children.push_back(std::move(kids.first));
      if (static_cast<int>(children.size()) < cfg.pop_size) {
        children.push_back(std::move(kids.second));
      }
    }
    std::vector<ScoredCondition> pool = std::move(pop);
    for (auto& c : score(std::move(children))) pool.push_back(std::move(c));
    std::vector<ScoredCondition> next;
    next.reserve(static_cast<std::size_t>(cfg.pop_size));
    next.push_back(elite);
    while (static_cast<int>(next.size()) < cfg.pop_size) {
      next.push_back(pool[tournament(pool, cfg.tournament_size, rng)]);
    }
    pop = std::move(next);
    ScoredCondition gen_best = best_of(pop);
    if (gen_best.fitness > elite.fitness) elite = gen_best;
    result.progress.push_back(stats(gen, pop));
    if (observer) observer(gen, pop);
  }

  pop.push_back(elite);
  std::map<std::string, ScoredCondition> unique;
  for (auto& p : pop) {
    if (!(p.fitness > 0.0)) continue;
    unique.emplace(print_condition(p.condition, ts.schema), std::move(p));
  }
  std::vector<std::pair<std::string, ScoredCondition>> ranked(unique.begin(), unique.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.second.fitness != y.second.fitness) return x.second.fitness > y.second.fitness;
    auto lx = condition_length(x.second.condition), ly = condition_length(y.second.condition);
    if (lx != ly) return lx < ly;
    return x.first < y.first;
  });
  for (std::size_t i = 0; i < ranked.size() && static_cast<int>(i) < cfg.best_k; ++i) {
    result.best.push_back(std::move(ranked[i].second));
  }
  return result;
}

std::string progress_csv(const std::vector<GenerationStats>& progress) {
  std::ostringstream os;
  os << "generation,best_fitness,mean_fitness\n";
  for (const auto& s : progress) {
    os << s.generation << ',' << format_number(s.best) << ',' << format_number(s.mean) << '\n';
  }
  return os.str();
}

}  // namespace aoracle
