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

#include "aoracle/pipeline.hpp"

#include "aoracle/error.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

const char* to_string(Method m) {
  switch (m) {
    case Method::kGpOchiai: return "gp-ochiai";
    case Method::kGpTarantula: return "gp-tarantula";
    case Method::kGpNaish: return "gp-naish";
    case Method::kDt: return "dt";
    case Method::kDr: return "dr";
    case Method::kEnsemble: return "ensemble";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> kAll = {Method::kGpOchiai, Method::kGpTarantula,
                                           Method::kGpNaish,  Method::kDt,
                                           Method::kDr,       Method::kEnsemble};
  return kAll;
}

std::vector<TreeParams> PipelineConfig::default_tree_grid() {
  std::vector<TreeParams> g;
  for (int depth : {3, 5, 8}) {
    for (int leaf : {1, 3, 5}) g.push_back({depth, leaf, 2 * leaf});
  }
  return g;
}

std::vector<RuleParams> PipelineConfig::default_rule_grid() {
  std::vector<RuleParams> g;
  for (std::size_t cov : {2, 5, 10}) {
    for (double prec : {0.9, 0.95, 1.0}) {
      for (int terms : {2, 3}) g.push_back({cov, prec, terms});
    }
  }
  return g;
}

namespace {

void append_gp(FitnessKind kind, const LabeledSet& ts, const PipelineConfig& cfg,
               std::uint64_t seed, Sources& out) {
  for (Verdict target : {Verdict::kFail, Verdict::kPass}) {
    GpConfig g = cfg.gp;
    g.fitness = kind;
    g.target = target;
    g.seed = derive_seed(seed, static_cast<std::uint64_t>(kind) + 1,
                         static_cast<std::uint64_t>(target) + 1);
    g.jobs = cfg.jobs;
    for (auto& s : evolve(ts, g).best) out.emplace_back(std::move(s.condition), target);
  }
}

void append_model(const RuleModel& m, Sources& out) {
  for (const auto& r : m.rules) out.emplace_back(r.condition, r.verdict);
}

}  // namespace

Sources infer_sources(Method method, const LabeledSet& ts, const PipelineConfig& cfg,
                      std::uint64_t seed) {
  check_labeled_set(ts);
  if (ts.rows.empty()) throw Error(ErrorCode::kValidation, "empty training set");
  Sources out;
  const FeatureSpec features = make_features(ts.schema, cfg.features);
  auto run_dt = [&] {
    auto fit = [&](const LabeledSet& t, const TreeParams& p) {
      return fit_decision_tree(t, features, p);
    };
    TreeParams p = grid_tune(fit, ts, cfg.dt_grid, derive_seed(seed, 0xd7), cfg.cv_folds);
    append_model(fit(ts, p), out);
  };
  auto run_dr = [&] {
    auto fit = [&](const LabeledSet& t, const RuleParams& p) {
      return fit_decision_rules(t, features, p);
    };
    RuleParams p = grid_tune(fit, ts, cfg.dr_grid, derive_seed(seed, 0xd4), cfg.cv_folds);
    append_model(fit(ts, p), out);
  };
  switch (method) {
    case Method::kGpOchiai: append_gp(FitnessKind::kOchiai, ts, cfg, seed, out); break;
    case Method::kGpTarantula: append_gp(FitnessKind::kTarantula, ts, cfg, seed, out); break;
    case Method::kGpNaish: append_gp(FitnessKind::kNaish, ts, cfg, seed, out); break;
    case Method::kDt: run_dt(); break;
    case Method::kDr: run_dr(); break;
    case Method::kEnsemble:
      append_gp(FitnessKind::kOchiai, ts, cfg, seed, out);
      append_gp(FitnessKind::kTarantula, ts, cfg, seed, out);
      append_gp(FitnessKind::kNaish, ts, cfg, seed, out);
      run_dt();
      run_dr();
      break;
  }
  return out;
}

BuildResult build_from_sources(const Sources& sources, const LabeledSet& ts, double theta,
                               const PipelineConfig& cfg, std::uint64_t seed) {
  PruneOptions prune = cfg.prune;
  prune.jobs = cfg.jobs;
  return build_oracle_detailed(sources, ts, theta, derive_seed(seed, 0x9a), prune);
}

BuildResult infer_oracle(Method method, const LabeledSet& ts, double theta,
                         const PipelineConfig& cfg, std::uint64_t seed) {
  return build_from_sources(infer_sources(method, ts, cfg, seed), ts, theta, cfg, seed);
}

}  // namespace aoracle
