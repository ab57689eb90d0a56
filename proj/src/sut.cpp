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

#include "aoracle/sut.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "aoracle/error.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

const char* to_string(FlipKind kind) {
  switch (kind) {
    case FlipKind::kNone: return "none";
    case FlipKind::kConstant: return "constant";
    case FlipKind::kBoundary: return "boundary";
  }
  return "?";
}

std::optional<FlipKind> parse_flip_kind(std::string_view name) {
  if (name == "none") return FlipKind::kNone;
  if (name == "constant") return FlipKind::kConstant;
  if (name == "boundary") return FlipKind::kBoundary;
  return std::nullopt;
}

SyntheticSut::SyntheticSut(std::string name, InputSchema schema, Condition ground_truth,
                           FlipModel flip, std::uint64_t seed, std::pair<double, double> fail_band)
    : name_(std::move(name)),
      schema_(std::move(schema)),
      truth_(std::move(ground_truth)),
      flip_(flip),
      seed_(seed),
      band_(fail_band) {
  if (auto e = validate(truth_, schema_, 0)) {
    throw Error(ErrorCode::kValidation, "ground truth of '" + name_ + "': " + *e);
  }
  if (flip_.kind != FlipKind::kNone && !(flip_.p >= 0.0 && flip_.p < 1.0)) {
    throw Error(ErrorCode::kValidation, "flip probability must lie in [0, 1)");
  }
  if (flip_.kind == FlipKind::kBoundary) {
    if (!(flip_.width > 0.0)) throw Error(ErrorCode::kValidation, "boundary width must be positive");
    for (const auto& t : uniform_generate(schema_, kBoundaryReferencePoints,
                                          derive_seed(seed_, 0x5eed))) {
      reference_[evaluate(truth_, t) ? 1 : 0].push_back(normalize(schema_, t));
    }
  }
}

Verdict SyntheticSut::true_verdict(const TestInput& input) const {
  return evaluate(truth_, input) ? Verdict::kFail : Verdict::kPass;
}

double SyntheticSut::flip_probability(const TestInput& input) const {
  switch (flip_.kind) {
    case FlipKind::kNone: return 0.0;
    case FlipKind::kConstant: return flip_.p;
    case FlipKind::kBoundary: break;
  }
  const auto& others = reference_[true_verdict(input) == Verdict::kFail ? 0 : 1];
  if (others.empty()) return 0.0;
  const auto x = normalize(schema_, input);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : others) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size() && d < best; ++k) d += (x[k] - r[k]) * (x[k] - r[k]);
    best = std::min(best, d);
  }
  return flip_.p * std::exp(-std::sqrt(best) / flip_.width);
}

double keyed_uniform(std::uint64_t seed, const TestInput& input, std::size_t run_index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : input.values) h = splitmix64(h ^ std::bit_cast<std::uint64_t>(v));
  std::uint64_t k = derive_seed(seed, h, run_index);
  return static_cast<double>(k >> 11) * 0x1.0p-53;
}

Verdict SyntheticSut::execute(const TestInput& input, std::size_t run_index) const {
  Verdict v = true_verdict(input);
  double p = flip_probability(input);
  if (p > 0.0 && keyed_uniform(seed_, input, run_index) < p) return opposite(v);
  return v;
}

RerunMatrix rerun_matrix(const SyntheticSut& sut, const std::vector<TestInput>& inputs,
                         std::size_t n_runs) {
  if (n_runs < 1) throw Error(ErrorCode::kValidation, "need at least one run");
  RerunMatrix m{sut.schema(), inputs, {}, n_runs};
  for (const auto& t : inputs) {
    Verdict v = sut.true_verdict(t);
    double p = sut.flip_probability(t);
    std::vector<Verdict> row;
    for (std::size_t r = 0; r < n_runs; ++r) {
      bool flip = p > 0.0 && keyed_uniform(sut.seed(), t, r) < p;
      row.push_back(flip ? opposite(v) : v);
    }
    m.verdicts.push_back(std::move(row));
  }
  return m;
}

LabeledSet truth_labels(const SyntheticSut& sut, const std::vector<TestInput>& inputs,
                        std::string name) {
  LabeledSet s{sut.schema(), {}, std::move(name)};
  for (const auto& t : inputs) s.rows.push_back({t, sut.true_verdict(t)});
  return s;
}

namespace {

SyntheticSut make(const std::string& name, const InputSchema& schema, const std::string& truth,
                  FlipModel flip, std::uint64_t seed, std::pair<double, double> band) {
  return SyntheticSut(name, schema, parse_condition(truth, schema), flip, seed, band);
}

}  // namespace

std::vector<SyntheticSut> scenario_catalog() {
  const FlipModel none{};
  const FlipModel boundary{FlipKind::kBoundary, 0.3, 0.05};
  std::vector<SyntheticSut> out;

  InputSchema sum({{"x1", 0, 100}, {"x2", 0, 100}});
  const std::string sum_truth = "x1 + x2 > 50";
  out.push_back(make("linear-sum", sum, sum_truth, none, 11, {0.80, 0.95}));
  out.push_back(make("linear-sum-flaky", sum, sum_truth, {FlipKind::kConstant, 0.1, 0.05}, 11,
                     {0.80, 0.95}));

  InputSchema ads({{"speed", 0, 100},
                   {"road_slope", 0, 10},
                   {"time_of_day", 0, 24},
                   {"other_vehicles", 0, 10}});
  const std::string ads_truth = "speed > 60 && road_slope > 4";
  out.push_back(make("conjunctive-box", ads, ads_truth, none, 12, {0.10, 0.60}));
  out.push_back(make("conjunctive-box-flaky", ads, ads_truth, boundary, 12, {0.10, 0.60}));

  InputSchema autopilot({}, {{"p", 4, -30, 45}, {"th", 4, 0, 100}}, 300);
  const std::string ap_truth = "c_p_0 < -10 || c_th_1 < 20 && c_p_1 < 0";
  out.push_back(make("signal-threshold", autopilot, ap_truth, none, 13, {0.10, 0.60}));
  out.push_back(make("signal-threshold-flaky", autopilot, ap_truth, boundary, 13, {0.10, 0.60}));

  InputSchema plane({{"x", 0, 10}, {"y", 0, 10}});
  const std::string two_truth = "x < 2 && y < 2 || x > 7 && y > 6";
  out.push_back(make("two-region", plane, two_truth, none, 14, {0.10, 0.60}));
  out.push_back(make("two-region-flaky", plane, two_truth, boundary, 14, {0.10, 0.60}));
  return out;
}

std::optional<SyntheticSut> find_scenario(std::string_view name) {
  for (auto& s : scenario_catalog()) {
    if (s.name() == name) return s;
  }
  return std::nullopt;
}

}  // namespace aoracle
