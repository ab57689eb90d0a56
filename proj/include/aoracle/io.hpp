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

// File formats: schema, scenario and configuration JSON; data, rerun and
// prediction CSV; oracle and report JSON.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "aoracle/data.hpp"
#include "aoracle/eval.hpp"
#include "aoracle/oracle.hpp"
#include "aoracle/pipeline.hpp"
#include "aoracle/sut.hpp"

namespace aoracle::io {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
// Creates parent directories as needed.
void write_file(const std::string& path, const std::string& content);
Json parse_json(const std::string& text, const std::string& what);

Json schema_to_json(const InputSchema& schema);
InputSchema schema_from_json(const Json& j);

// Header: schema variable names then `verdict`.
std::string labeled_csv(const LabeledSet& set);
LabeledSet parse_labeled_csv(const std::string& text, const InputSchema& schema,
                             std::string name = "data");

Json labeled_to_json(const LabeledSet& set);
LabeledSet labeled_from_json(const Json& j);

// Inputs only; a `verdict` column, if present, is ignored.
std::string inputs_csv(const InputSchema& schema, const std::vector<TestInput>& inputs);
std::vector<TestInput> parse_inputs_csv(const std::string& text, const InputSchema& schema);

// Header: schema variable names then verdict_1..verdict_k.
std::string rerun_csv(const RerunMatrix& m);
RerunMatrix parse_rerun_csv(const std::string& text, const InputSchema& schema);

std::string predictions_csv(const InputSchema& schema, const std::vector<TestInput>& inputs,
                            const std::vector<Verdict>& verdicts);

Json oracle_to_json(const Oracle& oracle);
Oracle oracle_from_json(const Json& j);

Json report_to_json(const EvalReport& report);
EvalReport report_from_json(const Json& j);
std::string report_csv_header();
std::string report_csv_row(const EvalReport& report);

Json scenario_to_json(const SyntheticSut& sut);
SyntheticSut scenario_from_json(const Json& j);

// Applies the keys present in `j` on top of `cfg`. Unknown keys are errors.
void apply_config(const Json& j, PipelineConfig& cfg);
Json config_to_json(const PipelineConfig& cfg);

}  // namespace aoracle::io
