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

// Small hand-built oracles and training sets with hand-computed outcomes,
// shared by the unit suites and the acceptance binary.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aoracle/data.hpp"
#include "aoracle/oracle.hpp"
#include "aoracle/predicate.hpp"

namespace fixtures {

using aoracle::Assertion;
using aoracle::Condition;
using aoracle::InputSchema;
using aoracle::LabeledSet;
using aoracle::TestInput;
using aoracle::Verdict;

// Driving-assistant oracle: three assertions and six labeled tests.
inline InputSchema ads_schema() {
  return InputSchema({{"speed", 0, 100},
                      {"road_slope", 0, 10},
                      {"time_of_day", 0, 24},
                      {"other_vehicles", 0, 10}});
}

inline TestInput ads_input(double speed, double slope, double tod, double vehicles) {
  return TestInput{{speed, slope, tod, vehicles}};
}

inline aoracle::Oracle ads_oracle() {
  InputSchema s = ads_schema();
  aoracle::Oracle o{s, 0.0, {}};
  auto add = [&](const char* text, Verdict v) {
    o.assertions.push_back({aoracle::parse_condition(text, s), v, 1.0});
  };
  add("speed - 20 <= 0 && road_slope - 2 < 0 && other_vehicles = 0", Verdict::kPass);  // a1
  add("speed - 50 > 0 && road_slope - 5 >= 0", Verdict::kFail);                      // a2
  add("speed - 40 <= 0 && other_vehicles - 2 <= 0 && road_slope - 4 < 0", Verdict::kPass);  // a3
  return o;
}

// Tests t1..t6 with their true verdicts.
inline LabeledSet ads_tests() {
  LabeledSet ts{ads_schema(), {}, "ads"};
  ts.rows = {{ads_input(15, 1, 9, 0), Verdict::kPass},
             {ads_input(80, 6, 14, 3), Verdict::kFail},
             {ads_input(45, 3, 20, 5), Verdict::kFail},
             {ads_input(55, 5, 12, 1), Verdict::kPass},
             {ads_input(30, 2, 16, 1), Verdict::kPass},
             {ads_input(90, 8, 22, 4), Verdict::kFail}};
  return ts;
}

// Four labeled tests and two candidate conditions: c1 holds on t1 only,
// c2 on t2 (fail) and t4 (pass).
inline InputSchema spectrum_schema() { return InputSchema({{"x1", 0, 100}, {"x2", 0, 100}}); }

inline LabeledSet spectrum_tests() {
  LabeledSet ts{spectrum_schema(), {}, "spectrum"};
  ts.rows = {{TestInput{{90, 10}}, Verdict::kFail},
             {TestInput{{20, 70}}, Verdict::kFail},
             {TestInput{{30, 20}}, Verdict::kPass},
             {TestInput{{60, 90}}, Verdict::kPass}};
  return ts;
}

inline Condition spectrum_c1() { return aoracle::parse_condition("x1 - 80 > 0", spectrum_schema()); }
inline Condition spectrum_c2() {
  return aoracle::parse_condition("x2 - 50 > 0 && x1 - 80 <= 0", spectrum_schema());
}

// Conflict-graph fixture: pass a1..a4 (indices 0..3), fail a1'..a3'
// (indices 4..6). Edges: a1-a1', a1-a2', a1-a3', a3-a2', a3-a3', a4-a3'.
inline InputSchema conflict_schema() { return spectrum_schema(); }

inline std::vector<Assertion> conflict_assertions() {
  InputSchema s = conflict_schema();
  std::vector<std::pair<std::string, Verdict>> defs = {
      {"x2 < 43", Verdict::kPass},                 // a1
      {"x1 > 60 && x2 > 60", Verdict::kPass},      // a2
      {"x1 * x2 > 900", Verdict::kPass},           // a3
      {"x1 < 20 && x2 > 80", Verdict::kPass},      // a4
      {"x1 + x2 < 10", Verdict::kFail},            // a1'
      {"x1 > 50 && x2 < 20", Verdict::kFail},      // a2'
      {"x1 < 40 && x2 > 30", Verdict::kFail},      // a3'
  };
  std::vector<Assertion> out;
  for (const auto& [text, v] : defs) out.push_back({aoracle::parse_condition(text, s), v, 1.0});
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> conflict_edges() {
  return {{0, 4}, {0, 5}, {0, 6}, {2, 5}, {2, 6}, {3, 6}};
}

}  // namespace fixtures
