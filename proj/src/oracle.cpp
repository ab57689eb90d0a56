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

#include "aoracle/oracle.hpp"

#include <algorithm>
#include <map>

#include "aoracle/error.hpp"
#include "aoracle/gp.hpp"
#include "aoracle/parallel.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

namespace {

double precision(const Spectrum& s, Verdict v) {
  std::size_t sat = s.c_p + s.c_f;
  if (sat == 0) return 0.0;
  return static_cast<double>(v == Verdict::kFail ? s.c_f : s.c_p) / static_cast<double>(sat);
}

}  // namespace

double confidence(const Condition& cond, Verdict verdict, const LabeledSet& ts) {
  return precision(count_spectrum(cond, ts), verdict);
}

std::vector<Assertion> threshold_filter(const std::vector<Assertion>& assertions, double theta) {
  std::vector<Assertion> out;
  for (const auto& a : assertions) {
    if (a.confidence + 1e-12 >= theta) out.push_back(a);
  }
  return out;
}

ConflictGraph build_conflict_graph(const std::vector<Assertion>& assertions,
                                   const InputSchema& schema, const PruneOptions& options) {
  ConflictGraph g;
  for (std::size_t i = 0; i < assertions.size(); ++i) {
    (assertions[i].verdict == Verdict::kFail ? g.fail : g.pass).push_back(i);
  }
  if (g.pass.empty() || g.fail.empty()) return g;
  SatChecker checker(schema, options.budget);
  std::vector<std::vector<std::uint8_t>> masks(assertions.size());
  parallel_for(assertions.size(), options.jobs,
               [&](std::size_t i) { masks[i] = checker.mask(assertions[i].condition); });
  const std::size_t pairs = g.pass.size() * g.fail.size();
  std::vector<std::uint8_t> conflict(pairs, 0);
  parallel_for(pairs, options.jobs, [&](std::size_t k) {
    std::size_t p = g.pass[k / g.fail.size()];
    std::size_t f = g.fail[k % g.fail.size()];
    SatResult r = checker.check(assertions[p].condition, masks[p], assertions[f].condition, masks[f]);
    conflict[k] = r.status != SatStatus::kUnsat;
  });
  for (std::size_t k = 0; k < pairs; ++k) {
    if (conflict[k]) g.edges.emplace_back(g.pass[k / g.fail.size()], g.fail[k % g.fail.size()]);
  }
  return g;
}

PruneResult prune_graph(const std::vector<Assertion>& assertions, const ConflictGraph& graph,
                        std::uint64_t seed) {
  const std::size_t n = assertions.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [p, f] : graph.edges) {
    adj[p].push_back(f);
    adj[f].push_back(p);
  }
  std::vector<bool> gone(n, false);
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = adj[i].size();
  std::vector<std::size_t> length(n);
  for (std::size_t i = 0; i < n; ++i) length[i] = condition_length(assertions[i].condition);

  Rng rng(seed);
  PruneResult res;
  res.graph = graph;
  std::size_t edges = graph.edges.size();
  while (edges > 0) {
    ++res.iterations;
    std::size_t min_len = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
      if (!gone[i] && degree[i] > 0) min_len = std::min(min_len, length[i]);
    }
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (!gone[i] && degree[i] > 0 && length[i] == min_len) s.push_back(i);
    }
    std::size_t victim = s.front();
    if (s.size() > 1) {
      std::size_t max_deg = 0;
      for (auto i : s) max_deg = std::max(max_deg, degree[i]);
      std::vector<std::size_t> h, hp;
      for (auto i : s) {
        if (degree[i] == max_deg) {
          h.push_back(i);
          if (assertions[i].verdict == Verdict::kPass) hp.push_back(i);
        }
      }
      if (h.size() == 1) {
        victim = h.front();
      } else {
        const auto& pick = hp.empty() ? h : hp;
        victim = pick[uniform_index(rng, pick.size())];
      }
    }
    gone[victim] = true;
    res.removed.push_back(victim);
    for (auto j : adj[victim]) {
      if (!gone[j]) {
        --degree[j];
        --edges;
      }
    }
    degree[victim] = 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!gone[i]) res.kept.push_back(assertions[i]);
  }
  return res;
}

PruneResult prune(const std::vector<Assertion>& assertions, const InputSchema& schema,
                  std::uint64_t seed, const PruneOptions& options) {
  for (const auto& a : assertions) {
    if (auto e = validate(a.condition, schema, 0)) {
      throw Error(ErrorCode::kValidation, "invalid assertion condition: " + *e);
    }
  }
  return prune_graph(assertions, build_conflict_graph(assertions, schema, options), seed);
}

BuildResult build_oracle_detailed(const std::vector<std::pair<Condition, Verdict>>& sources,
                                  const LabeledSet& ts, double theta, std::uint64_t seed,
                                  const PruneOptions& options) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::kValidation, "theta must lie in [0, 1]");
  }
  BuildResult out;
  out.candidates = sources.size();
  SpectrumCounter counter(ts);
  std::vector<Assertion> scored(sources.size());
  parallel_for(sources.size(), options.jobs, [&](std::size_t i) {
    const auto& [cond, verdict] = sources[i];
    if (verdict == Verdict::kInconclusive) {
      throw Error(ErrorCode::kValidation, "assertion verdict must be pass or fail");
    }
    scored[i] = Assertion{cond, verdict, precision(counter.count(cond), verdict)};
  });
  std::vector<Assertion> kept = threshold_filter(scored, theta);
  out.retained = kept.size();

  std::vector<Assertion> distinct;
  std::map<std::pair<std::string, Verdict>, std::size_t> seen;
  for (auto& a : kept) {
    auto key = std::make_pair(print_condition(a.condition, ts.schema), a.verdict);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), distinct.size());
      distinct.push_back(std::move(a));
    } else if (a.confidence > distinct[it->second].confidence) {
      distinct[it->second].confidence = a.confidence;
    }
  }
  out.distinct = distinct.size();
  out.pruning = prune(distinct, ts.schema, seed, options);
  out.oracle = Oracle{ts.schema, theta, out.pruning.kept};
  return out;
}

Oracle build_oracle(const std::vector<std::pair<Condition, Verdict>>& sources,
                    const LabeledSet& ts, double theta, std::uint64_t seed,
                    const PruneOptions& options) {
  return build_oracle_detailed(sources, ts, theta, seed, options).oracle;
}

Verdict predict(const Oracle& oracle, const TestInput& input) {
  for (const auto& a : oracle.assertions) {
    if (a.verdict == Verdict::kFail && evaluate(a.condition, input)) return Verdict::kFail;
  }
  for (const auto& a : oracle.assertions) {
    if (a.verdict == Verdict::kPass && evaluate(a.condition, input)) return Verdict::kPass;
  }
  return Verdict::kInconclusive;
}

std::size_t count_mixed(const Oracle& oracle, const DataMatrix& inputs) {
  std::vector<std::uint8_t> any_pass(inputs.rows, 0), any_fail(inputs.rows, 0), m;
  for (const auto& a : oracle.assertions) {
    evaluate_batch(a.condition, inputs, m);
    auto& acc = a.verdict == Verdict::kFail ? any_fail : any_pass;
    for (std::size_t i = 0; i < inputs.rows; ++i) acc[i] |= m[i];
  }
  std::size_t mixed = 0;
  for (std::size_t i = 0; i < inputs.rows; ++i) mixed += any_pass[i] && any_fail[i];
  return mixed;
}

}  // namespace aoracle
