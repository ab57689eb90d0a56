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

#include "aoracle/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aoracle/error.hpp"

namespace aoracle::io {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::kValidation, msg); }

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  out.push_back(cell);
  for (auto& s : out) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* b = s.data();
  if (!s.empty() && s[0] == '+') ++b;
  auto res = std::from_chars(b, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    invalid("line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
  return v;
}

Verdict parse_label(const std::string& s, std::size_t line) {
  auto v = parse_verdict(s);
  if (!v || *v == Verdict::kInconclusive) {
    invalid("line " + std::to_string(line) + ": verdict must be pass or fail, got '" + s + "'");
  }
  return *v;
}

// Column index of each schema variable in a CSV header.
std::vector<std::size_t> map_header(const std::vector<std::string>& header,
                                    const InputSchema& schema) {
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!col.emplace(header[i], i).second) invalid("duplicate CSV column '" + header[i] + "'");
  }
  std::vector<std::size_t> idx;
  for (const auto& v : schema.variables()) {
    auto it = col.find(v.name);
    if (it == col.end()) invalid("CSV is missing column '" + v.name + "'");
    idx.push_back(it->second);
  }
  return idx;
}

TestInput row_input(const std::vector<std::string>& cells, const std::vector<std::size_t>& idx,
                    std::size_t line) {
  TestInput t;
  for (std::size_t c : idx) t.values.push_back(parse_number(cells[c], line));
  return t;
}

void check_width(const std::vector<std::string>& cells, std::size_t width, std::size_t line) {
  if (cells.size() != width) {
    invalid("line " + std::to_string(line) + ": expected " + std::to_string(width) +
            " cells, found " + std::to_string(cells.size()));
  }
}

std::string header_of(const InputSchema& schema) {
  std::string h;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i) h += ',';
    h += schema.variable(i).name;
  }
  return h;
}

std::string values_of(const TestInput& t) {
  std::string s;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (i) s += ',';
    s += format_number(t.values[i]);
  }
  return s;
}

template <typename T>
T get(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) invalid(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    invalid(where + ": key '" + key + "' has the wrong type");
  }
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) invalid(where + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) invalid(where + ": unknown key '" + k + "'");
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(what + ": " + e.what());
  }
}

Json schema_to_json(const InputSchema& schema) {
  Json j;
  j["variables"] = Json::array();
  for (const auto& v : schema.base_variables()) {
    j["variables"].push_back({{"name", v.name}, {"lower", v.lower}, {"upper", v.upper}});
  }
  if (schema.has_signals()) {
    j["signals"] = Json::array();
    for (const auto& s : schema.signals()) {
      j["signals"].push_back(
          {{"name", s.name}, {"n_points", s.n_points}, {"lower", s.lower}, {"upper", s.upper}});
    }
    j["time_horizon"] = schema.time_horizon();
  }
  return j;
}

InputSchema schema_from_json(const Json& j) {
  check_keys(j, {"variables", "signals", "time_horizon"}, "schema");
  std::vector<VariableSpec> vars;
  std::vector<SignalSpec> sigs;
  if (j.contains("variables")) {
    for (const auto& v : j.at("variables")) {
      check_keys(v, {"name", "lower", "upper"}, "schema variable");
      vars.push_back({get<std::string>(v, "name", "variable"), get<double>(v, "lower", "variable"),
                      get<double>(v, "upper", "variable")});
    }
  }
  if (j.contains("signals")) {
    for (const auto& s : j.at("signals")) {
      check_keys(s, {"name", "n_points", "lower", "upper"}, "schema signal");
      sigs.push_back({get<std::string>(s, "name", "signal"), get<int>(s, "n_points", "signal"),
                      get<double>(s, "lower", "signal"), get<double>(s, "upper", "signal")});
    }
  }
  double b = j.contains("time_horizon") ? get<double>(j, "time_horizon", "schema") : 0.0;
  if (!sigs.empty() && !j.contains("time_horizon")) invalid("schema: signals need a time_horizon");
  return InputSchema(std::move(vars), std::move(sigs), b);
}

std::string labeled_csv(const LabeledSet& set) {
  std::string out = header_of(set.schema) + (set.schema.size() ? "," : "") + "verdict\n";
  for (const auto& r : set.rows) {
    out += values_of(r.input);
    out += set.schema.size() ? "," : "";
    out += to_string(r.verdict);
    out += '\n';
  }
  return out;
}

LabeledSet parse_labeled_csv(const std::string& text, const InputSchema& schema, std::string name) {
  auto lines = lines_of(text);
  if (lines.empty()) invalid("CSV is empty");
  auto header = split_line(lines[0]);
  auto idx = map_header(header, schema);
  auto vit = std::find(header.begin(), header.end(), "verdict");
  if (vit == header.end()) invalid("CSV has no 'verdict' column");
  std::size_t vcol = static_cast<std::size_t>(vit - header.begin());
  LabeledSet set{schema, {}, std::move(name)};
  for (std::size_t l = 1; l < lines.size(); ++l) {
    auto cells = split_line(lines[l]);
    check_width(cells, header.size(), l + 1);
    set.rows.push_back({row_input(cells, idx, l + 1), parse_label(cells[vcol], l + 1)});
  }
  check_labeled_set(set);
  return set;
}

Json labeled_to_json(const LabeledSet& set) {
  Json j;
  j["name"] = set.name;
  j["schema"] = schema_to_json(set.schema);
  j["rows"] = Json::array();
  for (const auto& r : set.rows) {
    Json row;
    for (std::size_t i = 0; i < set.schema.size(); ++i) {
      row[set.schema.variable(i).name] = r.input.values[i];
    }
    row["verdict"] = to_string(r.verdict);
    j["rows"].push_back(std::move(row));
  }
  return j;
}

LabeledSet labeled_from_json(const Json& j) {
  check_keys(j, {"name", "schema", "rows"}, "labeled set");
  LabeledSet set{schema_from_json(get<Json>(j, "schema", "labeled set")), {},
                 j.value("name", std::string("data"))};
  std::size_t k = 0;
  for (const auto& row : j.at("rows")) {
    ++k;
    TestInput t;
    for (const auto& v : set.schema.variables()) {
      t.values.push_back(get<double>(row, v.name.c_str(), "row " + std::to_string(k)));
    }
    set.rows.push_back({t, parse_label(get<std::string>(row, "verdict", "row"), k)});
  }
  check_labeled_set(set);
  return set;
}

std::string inputs_csv(const InputSchema& schema, const std::vector<TestInput>& inputs) {
  std::string out = header_of(schema) + "\n";
  for (const auto& t : inputs) out += values_of(t) + "\n";
  return out;
}

std::vector<TestInput> parse_inputs_csv(const std::string& text, const InputSchema& schema) {
  auto lines = lines_of(text);
  if (lines.empty()) invalid("CSV is empty");
  auto header = split_line(lines[0]);
  auto idx = map_header(header, schema);
  std::vector<TestInput> out;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    auto cells = split_line(lines[l]);
    check_width(cells, header.size(), l + 1);
    out.push_back(row_input(cells, idx, l + 1));
    if (auto e = check_input(schema, out.back())) invalid("line " + std::to_string(l + 1) + ": " + *e);
  }
  return out;
}

std::string rerun_csv(const RerunMatrix& m) {
  std::string out = header_of(m.schema);
  for (std::size_t k = 1; k <= m.runs(); ++k) out += ",verdict_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < m.inputs.size(); ++i) {
    out += values_of(m.inputs[i]);
    for (Verdict v : m.verdicts[i]) {
      out += ',';
      out += to_string(v);
    }
    out += '\n';
  }
  return out;
}

RerunMatrix parse_rerun_csv(const std::string& text, const InputSchema& schema) {
  auto lines = lines_of(text);
  if (lines.empty()) invalid("CSV is empty");
  auto header = split_line(lines[0]);
  auto idx = map_header(header, schema);
  std::vector<std::size_t> runs;
  for (std::size_t k = 1;; ++k) {
    auto it = std::find(header.begin(), header.end(), "verdict_" + std::to_string(k));
    if (it == header.end()) break;
    runs.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  if (runs.empty()) invalid("rerun CSV has no verdict_1 column");
  RerunMatrix m{schema, {}, {}, runs.size()};
  for (std::size_t l = 1; l < lines.size(); ++l) {
    auto cells = split_line(lines[l]);
    check_width(cells, header.size(), l + 1);
    m.inputs.push_back(row_input(cells, idx, l + 1));
    std::vector<Verdict> row;
    for (auto c : runs) row.push_back(parse_label(cells[c], l + 1));
    m.verdicts.push_back(std::move(row));
  }
  return m;
}

std::string predictions_csv(const InputSchema& schema, const std::vector<TestInput>& inputs,
                            const std::vector<Verdict>& verdicts) {
  std::string out = header_of(schema) + (schema.size() ? "," : "") + "prediction\n";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out += values_of(inputs[i]) + (schema.size() ? "," : "") + to_string(verdicts[i]) + "\n";
  }
  return out;
}

Json oracle_to_json(const Oracle& oracle) {
  Json j;
  j["theta"] = oracle.theta;
  j["assertions"] = Json::array();
  for (const auto& a : oracle.assertions) {
    j["assertions"].push_back({{"condition", print_condition(a.condition, oracle.schema)},
                               {"verdict", to_string(a.verdict)},
                               {"confidence", a.confidence}});
  }
  j["schema"] = schema_to_json(oracle.schema);
  return j;
}

Oracle oracle_from_json(const Json& j) {
  check_keys(j, {"theta", "assertions", "schema"}, "oracle");
  Oracle o{schema_from_json(get<Json>(j, "schema", "oracle")), get<double>(j, "theta", "oracle"), {}};
  for (const auto& a : j.at("assertions")) {
    check_keys(a, {"condition", "verdict", "confidence"}, "assertion");
    auto v = parse_verdict(get<std::string>(a, "verdict", "assertion"));
    if (!v || *v == Verdict::kInconclusive) invalid("assertion verdict must be pass or fail");
    o.assertions.push_back({parse_condition(get<std::string>(a, "condition", "assertion"), o.schema),
                            *v, get<double>(a, "confidence", "assertion")});
  }
  return o;
}

Json report_to_json(const EvalReport& r) {
  Json j;
  j["n_total"] = r.n_total;
  j["n_conclusive"] = r.n_conclusive;
  j["n_correct"] = r.n_correct;
  j["n_pass_as_fail"] = r.n_pass_as_fail;
  j["n_fail_as_pass"] = r.n_fail_as_pass;
  j["accuracy"] = r.accuracy;
  j["relative_accuracy"] = r.relative_accuracy ? Json(*r.relative_accuracy) : Json(nullptr);
  j["pass_as_fail"] = r.pass_as_fail;
  j["fail_as_pass"] = r.fail_as_pass;
  j["inconclusive_rate"] = r.inconclusive_rate;
  j["per_test"] = Json::array();
  for (const auto& p : r.per_test) {
    j["per_test"].push_back(
        {{"id", p.id}, {"truth", to_string(p.truth)}, {"predicted", to_string(p.predicted)}});
  }
  return j;
}

EvalReport report_from_json(const Json& j) {
  std::vector<Verdict> truth, pred;
  for (const auto& p : j.at("per_test")) {
    auto t = parse_verdict(p.at("truth").get<std::string>());
    auto q = parse_verdict(p.at("predicted").get<std::string>());
    if (!t || !q) invalid("report: bad verdict");
    truth.push_back(*t);
    pred.push_back(*q);
  }
  return make_report(truth, pred);
}

std::string report_csv_header() {
  return "n_total,n_conclusive,n_correct,accuracy,relative_accuracy,inconclusive_rate,"
         "pass_as_fail,fail_as_pass\n";
}

std::string report_csv_row(const EvalReport& r) {
  std::ostringstream os;
  os << r.n_total << ',' << r.n_conclusive << ',' << r.n_correct << ','
     << format_number(r.accuracy) << ','
     << (r.relative_accuracy ? format_number(*r.relative_accuracy) : std::string()) << ','
     << format_number(r.inconclusive_rate) << ',' << format_number(r.pass_as_fail) << ','
     << format_number(r.fail_as_pass) << '\n';
  return os.str();
}

Json scenario_to_json(const SyntheticSut& sut) {
  Json flip{{"model", to_string(sut.flip().kind)}};
  if (sut.flip().kind == FlipKind::kConstant) flip["p"] = sut.flip().p;
  if (sut.flip().kind == FlipKind::kBoundary) {
    flip["p_max"] = sut.flip().p;
    flip["width"] = sut.flip().width;
  }
  return Json{{"name", sut.name()},
              {"schema", schema_to_json(sut.schema())},
              {"ground_truth", print_condition(sut.ground_truth(), sut.schema())},
              {"flip", flip},
              {"seed", sut.seed()},
              {"fail_band", {sut.fail_band().first, sut.fail_band().second}}};
}

SyntheticSut scenario_from_json(const Json& j) {
  check_keys(j, {"name", "schema", "ground_truth", "flip", "seed", "fail_band"}, "scenario");
  InputSchema schema = schema_from_json(get<Json>(j, "schema", "scenario"));
  Condition truth = parse_condition(get<std::string>(j, "ground_truth", "scenario"), schema);
  FlipModel flip;
  if (j.contains("flip")) {
    const auto& f = j.at("flip");
    check_keys(f, {"model", "p", "p_max", "width"}, "flip");
    auto kind = parse_flip_kind(get<std::string>(f, "model", "flip"));
    if (!kind) invalid("flip: model must be none, constant or boundary");
    flip.kind = *kind;
    if (flip.kind == FlipKind::kConstant) flip.p = get<double>(f, "p", "flip");
    if (flip.kind == FlipKind::kBoundary) {
      flip.p = get<double>(f, "p_max", "flip");
      flip.width = get<double>(f, "width", "flip");
    }
  }
  std::pair<double, double> band{0.10, 0.60};
  if (j.contains("fail_band")) {
    auto b = j.at("fail_band").get<std::vector<double>>();
    if (b.size() != 2) invalid("fail_band needs two numbers");
    band = {b[0], b[1]};
  }
  return SyntheticSut(get<std::string>(j, "name", "scenario"), std::move(schema), std::move(truth),
                      flip, j.value("seed", std::uint64_t{0}), band);
}

void apply_config(const Json& j, PipelineConfig& cfg) {
  check_keys(j, {"gp", "dt_grid", "dr_grid", "features", "cv_folds", "sat", "seed", "theta",
                 "jobs", "method", "thetas", "repeats", "n", "runs", "pool", "scenario", "schema",
                 "train", "test", "matrix"},
             "config");
  if (j.contains("gp")) {
    const auto& g = j.at("gp");
    check_keys(g, {"pop_size", "generations", "mutation_rate", "crossover_rate", "max_depth",
                   "tournament_size", "min_const", "max_const", "best_k", "retry_limit"},
               "gp");
    auto& c = cfg.gp;
    c.pop_size = g.value("pop_size", c.pop_size);
    c.generations = g.value("generations", c.generations);
    c.mutation_rate = g.value("mutation_rate", c.mutation_rate);
    c.crossover_rate = g.value("crossover_rate", c.crossover_rate);
    c.max_depth = g.value("max_depth", c.max_depth);
    c.tournament_size = g.value("tournament_size", c.tournament_size);
    c.best_k = g.value("best_k", c.best_k);
    c.retry_limit = g.value("retry_limit", c.retry_limit);
    if (g.contains("min_const") != g.contains("max_const")) {
      invalid("gp: min_const and max_const go together");
    }
    if (g.contains("min_const")) {
      c.const_range = std::make_pair(get<double>(g, "min_const", "gp"), get<double>(g, "max_const", "gp"));
    }
    check_config(c);
  }
  if (j.contains("dt_grid")) {
    cfg.dt_grid.clear();
    for (const auto& p : j.at("dt_grid")) {
      check_keys(p, {"max_depth", "min_leaf", "min_split"}, "dt_grid entry");
      TreeParams t;
      cfg.dt_grid.push_back({p.value("max_depth", t.max_depth), p.value("min_leaf", t.min_leaf),
                             p.value("min_split", t.min_split)});
    }
    if (cfg.dt_grid.empty()) invalid("dt_grid is empty");
  }
  if (j.contains("dr_grid")) {
    cfg.dr_grid.clear();
    for (const auto& p : j.at("dr_grid")) {
      check_keys(p, {"min_coverage", "min_precision", "max_terms"}, "dr_grid entry");
      RuleParams r;
      cfg.dr_grid.push_back({p.value("min_coverage", r.min_coverage),
                             p.value("min_precision", r.min_precision),
                             p.value("max_terms", r.max_terms)});
    }
    if (cfg.dr_grid.empty()) invalid("dr_grid is empty");
  }
  if (j.contains("features")) {
    cfg.features.clear();
    for (const auto& f : j.at("features")) {
      check_keys(f, {"name", "expr"}, "feature");
      cfg.features.emplace_back(get<std::string>(f, "name", "feature"),
                                get<std::string>(f, "expr", "feature"));
    }
  }
  if (j.contains("cv_folds")) cfg.cv_folds = get<int>(j, "cv_folds", "config");
  if (cfg.cv_folds < 2) invalid("cv_folds must be at least 2");
  if (j.contains("sat")) {
    const auto& s = j.at("sat");
    check_keys(s, {"samples", "grid_per_dim", "max_grid_dims", "refute_nodes", "seed"}, "sat");
    auto& b = cfg.prune.budget;
    b.samples = s.value("samples", b.samples);
    b.grid_per_dim = s.value("grid_per_dim", b.grid_per_dim);
    b.max_grid_dims = s.value("max_grid_dims", b.max_grid_dims);
    b.refute_nodes = s.value("refute_nodes", b.refute_nodes);
    b.seed = s.value("seed", b.seed);
  }
}

Json config_to_json(const PipelineConfig& cfg) {
  Json g{{"pop_size", cfg.gp.pop_size},
         {"generations", cfg.gp.generations},
         {"mutation_rate", cfg.gp.mutation_rate},
         {"crossover_rate", cfg.gp.crossover_rate},
         {"max_depth", cfg.gp.max_depth},
         {"tournament_size", cfg.gp.tournament_size},
         {"best_k", cfg.gp.best_k},
         {"retry_limit", cfg.gp.retry_limit}};
  if (cfg.gp.const_range) {
    g["min_const"] = cfg.gp.const_range->first;
    g["max_const"] = cfg.gp.const_range->second;
  }
  Json dt = Json::array();
  for (const auto& t : cfg.dt_grid) {
    dt.push_back({{"max_depth", t.max_depth}, {"min_leaf", t.min_leaf}, {"min_split", t.min_split}});
  }
  Json dr = Json::array();
  for (const auto& r : cfg.dr_grid) {
    dr.push_back({{"min_coverage", r.min_coverage},
                  {"min_precision", r.min_precision},
                  {"max_terms", r.max_terms}});
  }
  Json feats = Json::array();
  for (const auto& [n, e] : cfg.features) feats.push_back({{"name", n}, {"expr", e}});
  const auto& b = cfg.prune.budget;
  return Json{{"gp", g},
              {"dt_grid", dt},
              {"dr_grid", dr},
              {"features", feats},
              {"cv_folds", cfg.cv_folds},
              {"sat",
               {{"samples", b.samples},
                {"grid_per_dim", b.grid_per_dim},
                {"max_grid_dims", b.max_grid_dims},
                {"refute_nodes", b.refute_nodes},
                {"seed", b.seed}}}};
}

}  // namespace aoracle::io
