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

#include "aoracle/eval.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "aoracle/error.hpp"
#include "aoracle/parallel.hpp"
#include "aoracle/rng.hpp"

namespace aoracle {

EvalReport make_report(const std::vector<Verdict>& truth, const std::vector<Verdict>& predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::kTestSetMismatch, "truth and prediction counts differ");
  }
  EvalReport r;
  r.n_total = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    r.per_test.push_back({i, truth[i], predicted[i]});
    if (predicted[i] == Verdict::kInconclusive) continue;
    ++r.n_conclusive;
    if (predicted[i] == truth[i]) {
      ++r.n_correct;
    } else if (truth[i] == Verdict::kPass) {
      ++r.n_pass_as_fail;
    } else {
      ++r.n_fail_as_pass;
    }
  }
  if (r.n_total > 0) {
    const double n = static_cast<double>(r.n_total);
    r.accuracy = static_cast<double>(r.n_correct) / n;
    r.pass_as_fail = static_cast<double>(r.n_pass_as_fail) / n;
    r.fail_as_pass = static_cast<double>(r.n_fail_as_pass) / n;
    r.inconclusive_rate = static_cast<double>(r.n_total - r.n_conclusive) / n;
  }
  if (r.n_conclusive > 0) {
    r.relative_accuracy = static_cast<double>(r.n_correct) / static_cast<double>(r.n_conclusive);
  }
  return r;
}

EvalReport evaluate_oracle(const Oracle& oracle, const LabeledSet& test_set) {
  if (!(test_set.schema == oracle.schema)) {
    throw Error(ErrorCode::kTestSetMismatch, "test set schema differs from the oracle's");
  }
  std::vector<Verdict> truth, predicted;
  for (const auto& row : test_set.rows) {
    truth.push_back(row.verdict);
    predicted.push_back(predict(oracle, row.input));
  }
  return make_report(truth, predicted);
}

std::pair<double, double> unique_correct(const EvalReport& a, const EvalReport& b) {
  if (a.per_test.size() != b.per_test.size()) {
    throw Error(ErrorCode::kTestSetMismatch, "reports cover different numbers of tests");
  }
  std::size_t only_a = 0, only_b = 0;
  for (std::size_t i = 0; i < a.per_test.size(); ++i) {
    const auto& x = a.per_test[i];
    const auto& y = b.per_test[i];
    if (x.id != y.id || x.truth != y.truth) {
      throw Error(ErrorCode::kTestSetMismatch, "reports disagree on test " + std::to_string(i));
    }
    bool ca = x.predicted == x.truth, cb = y.predicted == y.truth;
    only_a += ca && !cb;
    only_b += cb && !ca;
  }
  if (a.per_test.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(a.per_test.size());
  return {static_cast<double>(only_a) / n, static_cast<double>(only_b) / n};
}

double aad(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::kValidation, "aad of an empty list");
  const double n = static_cast<double>(values.size());
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double dev = 0.0;
  for (double v : values) dev += std::fabs(v - mean);
  return dev / n;
}

const char* to_string(Magnitude m) {
  switch (m) {
    case Magnitude::kNegligible: return "negligible";
    case Magnitude::kSmall: return "small";
    case Magnitude::kMedium: return "medium";
    case Magnitude::kLarge: return "large";
  }
  return "?";
}

double vargha_delaney_a12(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || ys.empty()) throw Error(ErrorCode::kValidation, "A12 needs two nonempty samples");
  double wins = 0.0;
  for (double x : xs) {
    for (double y : ys) wins += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return wins / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
}

EffectSize vargha_delaney(const std::vector<double>& xs, const std::vector<double>& ys) {
  EffectSize e;
  e.a12 = vargha_delaney_a12(xs, ys);
  // Distance from 0.5, so that a12 and 1 - a12 get the same label.
  double d = std::fabs(e.a12 - 0.5);
  if (d >= 0.21 - 1e-12) {
    e.magnitude = Magnitude::kLarge;
  } else if (d >= 0.14 - 1e-12) {
    e.magnitude = Magnitude::kMedium;
  } else if (d >= 0.06 - 1e-12) {
    e.magnitude = Magnitude::kSmall;
  }
  return e;
}

RobustnessResult robustness_sweep(const RerunMatrix& matrix, const InferFn& infer,
                                  const LabeledSet& test_set, double theta, int repeats,
                                  std::uint64_t seed, unsigned jobs) {
  if (repeats < 1) throw Error(ErrorCode::kValidation, "repeats must be at least 1");
  const std::size_t cols = matrix.runs();
  if (cols == 0) throw Error(ErrorCode::kValidation, "rerun matrix has no runs");
  const auto reps = static_cast<std::size_t>(repeats);
  RobustnessResult res;
  res.accuracies.assign(cols, std::vector<double>(reps, 0.0));
  parallel_for(cols * reps, jobs, [&](std::size_t cell) {
    std::size_t c = cell / reps, r = cell % reps;
    LabeledSet train = column_dataset(matrix, c + 1);
    Oracle o = infer(train, theta, derive_seed(seed, c + 1, r));
    res.accuracies[c][r] = evaluate_oracle(o, test_set).accuracy;
  });
  for (const auto& row : res.accuracies) {
    res.column_means.push_back(std::accumulate(row.begin(), row.end(), 0.0) /
                               static_cast<double>(row.size()));
  }
  res.aad = aad(res.column_means);
  return res;
}

std::string markdown_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  auto pct = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << 100.0 * v;
    return s.str();
  };
  os << "| method | theta | accuracy % | relative accuracy % | inconclusive % | pass-as-fail % | "
        "fail-as-pass % |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    os << "| " << r.method << " | " << format_number(r.theta) << " | " << pct(r.report.accuracy)
       << " | " << (r.report.relative_accuracy ? pct(*r.report.relative_accuracy) : "n/a")
       << " | " << pct(r.report.inconclusive_rate) << " | " << pct(r.report.pass_as_fail)
       << " | " << pct(r.report.fail_as_pass) << " |\n";
  }
  return os.str();
}

}  // namespace aoracle
