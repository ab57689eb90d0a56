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

#include "aoracle/data.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "aoracle/error.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "pass") return Verdict::kPass;
  if (s == "fail") return Verdict::kFail;
  if (s == "inconclusive") return Verdict::kInconclusive;
  return std::nullopt;
}

Verdict opposite(Verdict v) {
  if (v == Verdict::kPass) return Verdict::kFail;
  if (v == Verdict::kFail) return Verdict::kPass;
  return v;
}

std::size_t LabeledSet::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [v](const LabeledRow& r) { return r.verdict == v; }));
}

std::vector<TestInput> LabeledSet::inputs() const {
  std::vector<TestInput> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.input);
  return out;
}

DataMatrix LabeledSet::matrix() const { return DataMatrix::from_inputs(schema, inputs()); }

void check_labeled_set(const LabeledSet& set) {
  for (std::size_t i = 0; i < set.rows.size(); ++i) {
    const auto& r = set.rows[i];
    if (r.verdict == Verdict::kInconclusive) {
      throw Error(ErrorCode::kValidation, "row " + std::to_string(i) + " is labeled inconclusive");
    }
    if (auto e = check_input(set.schema, r.input)) {
      throw Error(ErrorCode::kValidation, "row " + std::to_string(i) + ": " + *e);
    }
  }
}

LabeledSet column_dataset(const RerunMatrix& m, std::size_t k) {
  if (k < 1 || k > m.runs()) {
    throw Error(ErrorCode::kValidation, "run index " + std::to_string(k) + " out of range");
  }
  LabeledSet s{m.schema, {}, "run_" + std::to_string(k)};
  for (std::size_t i = 0; i < m.inputs.size(); ++i) {
    s.rows.push_back({m.inputs[i], m.verdicts[i][k - 1]});
  }
  return s;
}

double flakiness_rate(const RerunMatrix& m) {
  if (m.runs() < 2) throw Error(ErrorCode::kValidation, "flakiness needs at least two runs");
  if (m.verdicts.empty()) return 0.0;
  std::size_t flaky = 0;
  for (const auto& row : m.verdicts) {
    if (std::any_of(row.begin(), row.end(), [&](Verdict v) { return v != row.front(); })) ++flaky;
  }
  return static_cast<double>(flaky) / static_cast<double>(m.verdicts.size());
}

LabeledSet majority_filter(const RerunMatrix& m, double min_agreement) {
  if (!(min_agreement > 0.5 && min_agreement <= 1.0)) {
    throw Error(ErrorCode::kValidation, "min_agreement must lie in (0.5, 1]");
  }
  LabeledSet s{m.schema, {}, "majority"};
  for (std::size_t i = 0; i < m.inputs.size(); ++i) {
    const auto& row = m.verdicts[i];
    auto fails = static_cast<std::size_t>(std::count(row.begin(), row.end(), Verdict::kFail));
    std::size_t passes = row.size() - fails;
    std::size_t top = std::max(fails, passes);
    // Integer comparison avoids rounding at exact ratios such as 8/10.
    if (static_cast<double>(top) + 1e-9 >= min_agreement * static_cast<double>(row.size())) {
      s.rows.push_back({m.inputs[i], fails > passes ? Verdict::kFail : Verdict::kPass});
    }
  }
  return s;
}

std::vector<double> normalize(const InputSchema& schema, const TestInput& input) {
  std::vector<double> out(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const auto& v = schema.variable(i);
    out[i] = (input.values[i] - v.lower) / (v.upper - v.lower);
  }
  return out;
}

std::size_t select_farthest(const std::vector<std::vector<double>>& selected,
                            const std::vector<std::vector<double>>& candidates) {
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& s : selected) {
      double d = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) {
        double diff = s[k] - candidates[c][k];
        d += diff * diff;
      }
      nearest = std::min(nearest, d);
    }
    if (nearest > best_d) {
      best_d = nearest;
      best = c;
    }
  }
  return best;
}

namespace {

TestInput draw(const InputSchema& schema, Rng& rng) {
  TestInput t;
  t.values.reserve(schema.size());
  for (const auto& v : schema.variables()) t.values.push_back(uniform(rng, v.lower, v.upper));
  return t;
}

}  // namespace

std::vector<TestInput> adaptive_random_generate(const InputSchema& schema, std::size_t n,
                                                std::size_t pool, std::uint64_t seed) {
  if (pool == 0) throw Error(ErrorCode::kValidation, "candidate pool must be positive");
  Rng rng(seed);
  std::vector<TestInput> out;
  std::vector<std::vector<double>> selected;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      out.push_back(draw(schema, rng));
    } else {
      std::vector<TestInput> cands;
      std::vector<std::vector<double>> norm;
      for (std::size_t c = 0; c < pool; ++c) {
        cands.push_back(draw(schema, rng));
        norm.push_back(normalize(schema, cands.back()));
      }
      out.push_back(std::move(cands[select_farthest(selected, norm)]));
    }
    selected.push_back(normalize(schema, out.back()));
  }
  return out;
}

std::vector<TestInput> uniform_generate(const InputSchema& schema, std::size_t n,
                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TestInput> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(schema, rng));
  return out;
}

}  // namespace aoracle
