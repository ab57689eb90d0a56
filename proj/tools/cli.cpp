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

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "aoracle/error.hpp"
#include "aoracle/eval.hpp"
#include "aoracle/io.hpp"
#include "aoracle/parallel.hpp"
#include "aoracle/pipeline.hpp"
#include "aoracle/rng.hpp"
#include "aoracle/sut.hpp"

namespace aoracle::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

// Signals an empty result: outputs are written, the exit code is 3.
struct EmptyResult {
  std::string warning;
};

struct Common {
  std::string config_path;
  unsigned jobs = 0;
  std::uint64_t seed = 0;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path,
                  std::string("JSON config file; defaults to $") + kConfigEnv);
  c.jobs_opt = cmd->add_option("--jobs", c.jobs, "worker threads (0 = all cores)");
  c.seed_opt = cmd->add_option("--seed", c.seed, "random seed");
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::kValidation, msg); }

template <typename T>
T resolve(const CLI::Option* opt, const T& flag, const Json& cfg, const char* key,
          const T& fallback) {
  if (opt != nullptr && opt->count() > 0) return flag;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      invalid(std::string("config key '") + key + "' has the wrong type");
    }
  }
  return fallback;
}

std::string required(const CLI::Option* opt, const std::string& flag, const Json& cfg,
                     const char* key, const char* name) {
  std::string v = resolve<std::string>(opt, flag, cfg, key, "");
  if (v.empty()) invalid(std::string("missing required ") + name);
  return v;
}

std::string sibling(const std::string& path, const std::string& ext) {
  fs::path p(path);
  p.replace_extension(ext);
  return p.string();
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Settings shared by every command after merging the config file and flags.
struct Context {
  std::string command;
  Json config = Json::object();
  PipelineConfig pipeline;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  Json params = Json::object();  // command-specific effective settings
  Json inputs = Json::object();
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

Context make_context(const std::string& command, const Common& c) {
  Context ctx;
  ctx.command = command;
  std::string path = c.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (!path.empty()) {
    ctx.config = io::parse_json(io::read_file(path), path);
    io::apply_config(ctx.config, ctx.pipeline);
    ctx.inputs["config"] = path;
  }
  ctx.seed = resolve<std::uint64_t>(c.seed_opt, c.seed, ctx.config, "seed", 0);
  ctx.jobs = resolve_jobs(resolve<unsigned>(c.jobs_opt, c.jobs, ctx.config, "jobs", 0));
  ctx.pipeline.jobs = ctx.jobs;
  return ctx;
}

void write_output(Context& ctx, const std::string& path, const std::string& content) {
  io::write_file(path, content);
  ctx.outputs.push_back(path);
}

// The digest covers every setting that can change outputs; the worker count
// cannot, so it is recorded but not digested.
void write_manifest(const Context& ctx, const std::string& path) {
  Json effective = io::config_to_json(ctx.pipeline);
  effective["seed"] = ctx.seed;
  for (const auto& [k, v] : ctx.params.items()) effective[k] = v;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  Json m{{"command", ctx.command},
         {"config_digest", fnv1a_hex(effective.dump())},
         {"seed", ctx.seed},
         {"inputs", ctx.inputs},
         {"outputs", ctx.outputs},
         {"tool_version", AORACLE_VERSION},
         {"jobs", ctx.jobs},
         {"started_at", utc_now()},
         {"wall_clock_seconds", secs},
         {"effective_config", effective}};
  io::write_file(path, m.dump(2) + "\n");
}

SyntheticSut load_scenario(const std::string& spec) {
  if (fs::exists(spec)) return io::scenario_from_json(io::parse_json(io::read_file(spec), spec));
  if (auto s = find_scenario(spec)) return *s;
  invalid("unknown scenario '" + spec + "'");
}

// A schema file may hold a bare schema or a whole scenario.
InputSchema load_schema(Context& ctx, const std::string& schema_path, const std::string& scenario) {
  if (!schema_path.empty()) {
    ctx.inputs["schema"] = schema_path;
    Json j = io::parse_json(io::read_file(schema_path), schema_path);
    if (j.is_object() && j.contains("ground_truth")) return io::scenario_from_json(j).schema();
    return io::schema_from_json(j);
  }
  if (!scenario.empty()) {
    ctx.inputs["scenario"] = scenario;
    return load_scenario(scenario).schema();
  }
  invalid("a schema is required (--schema or --scenario)");
}

LabeledSet load_labeled(Context& ctx, const char* role, const std::string& path,
                        const InputSchema& schema) {
  ctx.inputs[role] = path;
  return io::parse_labeled_csv(io::read_file(path), schema, fs::path(path).stem().string());
}

Method parse_method_or_throw(const std::string& name) {
  auto m = parse_method(name);
  if (!m) invalid("unknown method '" + name + "'");
  return *m;
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) invalid("theta must lie in [0, 1]");
}

std::string describe(const BuildResult& r) {
  std::size_t n_pass = 0;
  for (const auto& a : r.oracle.assertions) n_pass += a.verdict == Verdict::kPass;
  std::ostringstream os;
  os << r.oracle.assertions.size() << " assertions (" << n_pass << " pass, "
     << r.oracle.assertions.size() - n_pass << " fail); " << r.candidates << " candidates, "
     << r.retained << " above threshold, " << r.pruning.removed.size() << " pruned";
  return os.str();
}

// ---- gen ----

struct GenArgs {
  Common common;
  std::string scenario, out;
  std::size_t n = 200, runs = 10, pool = 10;
  CLI::Option *scenario_opt, *n_opt, *runs_opt, *pool_opt;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  Context ctx = make_context("gen", a.common);
  std::string scen = required(a.scenario_opt, a.scenario, ctx.config, "scenario", "--scenario");
  auto n = resolve<std::size_t>(a.n_opt, a.n, ctx.config, "n", 200);
  auto runs = resolve<std::size_t>(a.runs_opt, a.runs, ctx.config, "runs", 10);
  auto pool = resolve<std::size_t>(a.pool_opt, a.pool, ctx.config, "pool", 10);
  if (runs < 1) invalid("--runs must be at least 1");
  if (pool < 1) invalid("--pool must be at least 1");
  if (a.out.empty()) invalid("missing required --out");
  ctx.params = Json{{"scenario", scen}, {"n", n}, {"runs", runs}, {"pool", pool}};
  ctx.inputs["scenario"] = scen;

  SyntheticSut sut = load_scenario(scen);
  auto inputs = adaptive_random_generate(sut.schema(), n, pool, ctx.seed);
  RerunMatrix m = rerun_matrix(sut, inputs, runs);
  fs::path dir(a.out);
  write_output(ctx, (dir / "scenario.json").string(), io::scenario_to_json(sut).dump(2) + "\n");
  write_output(ctx, (dir / "schema.json").string(), io::schema_to_json(sut.schema()).dump(2) + "\n");
  write_output(ctx, (dir / "matrix.csv").string(), io::rerun_csv(m));
  write_output(ctx, (dir / "truth.csv").string(), io::labeled_csv(truth_labels(sut, inputs)));
  for (std::size_t k = 1; k <= runs; ++k) {
    write_output(ctx, (dir / ("run_" + std::to_string(k) + ".csv")).string(),
                 io::labeled_csv(column_dataset(m, k)));
  }
  write_manifest(ctx, (dir / "manifest.json").string());
  out << "generated " << n << " inputs x " << runs << " runs for " << sut.name();
  if (runs >= 2) out << "; flakiness " << format_number(flakiness_rate(m));
  out << "\n";
  return kExitOk;
}

// ---- infer ----

struct InferArgs {
  Common common;
  std::string train, schema, scenario, method = "gp-ochiai", out;
  double theta = 0.7;
  CLI::Option *train_opt, *schema_opt, *scenario_opt, *method_opt, *theta_opt;
};

int cmd_infer(const InferArgs& a, std::ostream& out) {
  Context ctx = make_context("infer", a.common);
  std::string method_name = resolve(a.method_opt, a.method, ctx.config, "method", a.method);
  double theta = resolve(a.theta_opt, a.theta, ctx.config, "theta", a.theta);
  check_theta(theta);
  Method method = parse_method_or_throw(method_name);
  if (a.out.empty()) invalid("missing required --out");
  InputSchema schema = load_schema(ctx, resolve(a.schema_opt, a.schema, ctx.config, "schema", a.schema),
                                   resolve(a.scenario_opt, a.scenario, ctx.config, "scenario", a.scenario));
  LabeledSet train = load_labeled(ctx, "train", required(a.train_opt, a.train, ctx.config, "train", "--train"),
                                  schema);
  ctx.params = Json{{"method", method_name}, {"theta", theta}};

  BuildResult r = infer_oracle(method, train, theta, ctx.pipeline, ctx.seed);
  write_output(ctx, a.out, io::oracle_to_json(r.oracle).dump(2) + "\n");
  write_manifest(ctx, a.out + ".manifest.json");
  out << "oracle: " << describe(r) << "\n";
  if (r.oracle.assertions.empty()) throw EmptyResult{"oracle is empty at theta " + format_number(theta)};
  return kExitOk;
}

// ---- predict ----

struct PredictArgs {
  Common common;
  std::string oracle, inputs, out;
};

Oracle load_oracle(Context& ctx, const std::string& path) {
  if (path.empty()) invalid("missing required --oracle");
  ctx.inputs["oracle"] = path;
  return io::oracle_from_json(io::parse_json(io::read_file(path), path));
}

int cmd_predict(const PredictArgs& a, std::ostream& out) {
  Context ctx = make_context("predict", a.common);
  Oracle oracle = load_oracle(ctx, a.oracle);
  if (a.inputs.empty()) invalid("missing required --inputs");
  if (a.out.empty()) invalid("missing required --out");
  ctx.inputs["inputs"] = a.inputs;
  auto inputs = io::parse_inputs_csv(io::read_file(a.inputs), oracle.schema);
  std::vector<Verdict> verdicts;
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& t : inputs) {
    verdicts.push_back(predict(oracle, t));
    ++counts[static_cast<int>(verdicts.back())];
  }
  write_output(ctx, a.out, io::predictions_csv(oracle.schema, inputs, verdicts));
  write_manifest(ctx, a.out + ".manifest.json");
  out << "predicted " << inputs.size() << " inputs: " << counts[0] << " pass, " << counts[1]
      << " fail, " << counts[2] << " inconclusive\n";
  if (oracle.assertions.empty()) throw EmptyResult{"oracle has no assertions"};
  return kExitOk;
}

// ---- eval ----

struct EvalArgs {
  Common common;
  std::string oracle, test, out, csv;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  Context ctx = make_context("eval", a.common);
  Oracle oracle = load_oracle(ctx, a.oracle);
  if (a.test.empty()) invalid("missing required --test");
  if (a.out.empty()) invalid("missing required --out");
  LabeledSet test = load_labeled(ctx, "test", a.test, oracle.schema);
  EvalReport r = evaluate_oracle(oracle, test);
  write_output(ctx, a.out, io::report_to_json(r).dump(2) + "\n");
  write_output(ctx, a.csv.empty() ? sibling(a.out, ".csv") : a.csv,
               io::report_csv_header() + io::report_csv_row(r));
  write_manifest(ctx, a.out + ".manifest.json");
  out << "accuracy " << format_number(r.accuracy) << ", relative accuracy "
      << (r.relative_accuracy ? format_number(*r.relative_accuracy) : std::string("n/a"))
      << ", inconclusive " << format_number(r.inconclusive_rate) << "\n";
  if (oracle.assertions.empty()) throw EmptyResult{"oracle has no assertions"};
  return kExitOk;
}

// ---- sweep ----

struct SweepArgs {
  Common common;
  std::string train, test, schema, scenario, out, markdown;
  std::vector<std::string> methods;
  std::vector<double> thetas;
  CLI::Option *train_opt, *test_opt, *schema_opt, *scenario_opt, *method_opt, *thetas_opt;
};

std::vector<double> default_thetas() {
  std::vector<double> t;
  for (int i = 0; i <= 10; ++i) t.push_back((50 + 5 * i) / 100.0);
  return t;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  Context ctx = make_context("sweep", a.common);
  std::vector<std::string> names;
  if (a.method_opt->count() > 0) {
    names = a.methods;
  } else if (ctx.config.contains("method")) {
    const Json& m = ctx.config.at("method");
    names = m.is_array() ? m.get<std::vector<std::string>>()
                         : std::vector<std::string>{m.get<std::string>()};
  } else {
    names = {"gp-ochiai"};
  }
  std::vector<Method> methods;
  for (const auto& n : names) methods.push_back(parse_method_or_throw(n));
  auto thetas = resolve(a.thetas_opt, a.thetas, ctx.config, "thetas", default_thetas());
  if (thetas.empty()) invalid("--thetas is empty");
  for (double t : thetas) check_theta(t);
  if (a.out.empty()) invalid("missing required --out");
  InputSchema schema = load_schema(ctx, resolve(a.schema_opt, a.schema, ctx.config, "schema", a.schema),
                                   resolve(a.scenario_opt, a.scenario, ctx.config, "scenario", a.scenario));
  LabeledSet train = load_labeled(ctx, "train", required(a.train_opt, a.train, ctx.config, "train", "--train"),
                                  schema);
  LabeledSet test = load_labeled(ctx, "test", required(a.test_opt, a.test, ctx.config, "test", "--test"),
                                 schema);
  ctx.params = Json{{"method", names}, {"thetas", thetas}};

  // Candidate conditions do not depend on theta, so each method is inferred
  // once and every (method, theta) cell rebuilds only the oracle.
  std::vector<Sources> sources(methods.size());
  PipelineConfig inner = ctx.pipeline;
  if (methods.size() > 1) inner.jobs = 1;
  parallel_for(methods.size(), ctx.jobs, [&](std::size_t i) {
    sources[i] = infer_sources(methods[i], train, inner, ctx.seed);
  });
  const std::size_t cells = methods.size() * thetas.size();
  std::vector<BuildResult> built(cells);
  std::vector<EvalReport> reports(cells);
  PipelineConfig cell_cfg = ctx.pipeline;
  cell_cfg.jobs = 1;
  parallel_for(cells, ctx.jobs, [&](std::size_t c) {
    std::size_t mi = c / thetas.size(), ti = c % thetas.size();
    built[c] = build_from_sources(sources[mi], train, thetas[ti], cell_cfg, ctx.seed);
    reports[c] = evaluate_oracle(built[c].oracle, test);
  });

  std::ostringstream csv;
  csv << "method,theta,accuracy,relative_accuracy,inconclusive_rate,pass_as_fail,fail_as_pass,"
         "candidates,retained,assertions\n";
  std::vector<SummaryRow> rows;
  for (std::size_t c = 0; c < cells; ++c) {
    const Method m = methods[c / thetas.size()];
    const double theta = thetas[c % thetas.size()];
    const EvalReport& r = reports[c];
    csv << to_string(m) << ',' << format_number(theta) << ',' << format_number(r.accuracy) << ','
        << (r.relative_accuracy ? format_number(*r.relative_accuracy) : std::string()) << ','
        << format_number(r.inconclusive_rate) << ',' << format_number(r.pass_as_fail) << ','
        << format_number(r.fail_as_pass) << ',' << built[c].candidates << ','
        << built[c].retained << ',' << built[c].oracle.assertions.size() << '\n';
    rows.push_back({to_string(m), theta, r});
  }
  write_output(ctx, a.out, csv.str());
  write_output(ctx, a.markdown.empty() ? sibling(a.out, ".md") : a.markdown, markdown_summary(rows));
  write_manifest(ctx, a.out + ".manifest.json");
  out << "swept " << methods.size() << " method(s) x " << thetas.size() << " threshold(s)\n";
  return kExitOk;
}

// ---- robust ----

struct RobustArgs {
  Common common;
  std::string matrix, test, schema, scenario, method = "gp-ochiai", out;
  double theta = 0.7;
  int repeats = 5;
  CLI::Option *matrix_opt, *test_opt, *schema_opt, *scenario_opt, *method_opt, *theta_opt,
      *repeats_opt;
};

int cmd_robust(const RobustArgs& a, std::ostream& out) {
  Context ctx = make_context("robust", a.common);
  std::string method_name = resolve(a.method_opt, a.method, ctx.config, "method", a.method);
  Method method = parse_method_or_throw(method_name);
  double theta = resolve(a.theta_opt, a.theta, ctx.config, "theta", a.theta);
  check_theta(theta);
  int repeats = resolve(a.repeats_opt, a.repeats, ctx.config, "repeats", a.repeats);
  if (repeats < 1) invalid("--repeats must be at least 1");
  if (a.out.empty()) invalid("missing required --out");
  InputSchema schema = load_schema(ctx, resolve(a.schema_opt, a.schema, ctx.config, "schema", a.schema),
                                   resolve(a.scenario_opt, a.scenario, ctx.config, "scenario", a.scenario));
  std::string matrix_path = required(a.matrix_opt, a.matrix, ctx.config, "matrix", "--matrix");
  ctx.inputs["matrix"] = matrix_path;
  RerunMatrix matrix = io::parse_rerun_csv(io::read_file(matrix_path), schema);
  LabeledSet test = load_labeled(ctx, "test", required(a.test_opt, a.test, ctx.config, "test", "--test"),
                                 schema);
  ctx.params = Json{{"method", method_name}, {"theta", theta}, {"repeats", repeats}};

  PipelineConfig inner = ctx.pipeline;
  inner.jobs = 1;
  InferFn infer = [&](const LabeledSet& train, double th, std::uint64_t seed) {
    return infer_oracle(method, train, th, inner, seed).oracle;
  };
  RobustnessResult r = robustness_sweep(matrix, infer, test, theta, repeats, ctx.seed, ctx.jobs);

  Json j{{"method", method_name},
         {"theta", theta},
         {"repeats", repeats},
         {"accuracies", r.accuracies},
         {"column_means", r.column_means},
         {"aad", r.aad}};
  std::ostringstream csv;
  csv << "column,repeat,accuracy\n";
  for (std::size_t c = 0; c < r.accuracies.size(); ++c) {
    for (std::size_t k = 0; k < r.accuracies[c].size(); ++k) {
      csv << c + 1 << ',' << k + 1 << ',' << format_number(r.accuracies[c][k]) << '\n';
    }
  }
  write_output(ctx, a.out, j.dump(2) + "\n");
  write_output(ctx, sibling(a.out, ".csv"), csv.str());
  write_manifest(ctx, a.out + ".manifest.json");
  out << "aad " << format_number(r.aad) << " over " << r.column_means.size() << " columns\n";
  return kExitOk;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infers assertion-based test oracles from labeled test data.", "aoracle"};
  app.set_version_flag("--version", AORACLE_VERSION);
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate ART inputs and rerun verdicts for a scenario");
  add_common(g, gen.common);
  gen.scenario_opt = g->add_option("--scenario", gen.scenario, "catalog name or scenario JSON file");
  gen.n_opt = g->add_option("-n,--n", gen.n, "number of inputs");
  gen.runs_opt = g->add_option("--runs", gen.runs, "executions per input");
  gen.pool_opt = g->add_option("--pool", gen.pool, "ART candidate pool size");
  g->add_option("--out", gen.out, "output directory");

  InferArgs inf;
  auto* i = app.add_subcommand("infer", "infer an oracle from a labeled CSV");
  add_common(i, inf.common);
  inf.train_opt = i->add_option("--train", inf.train, "labeled training CSV");
  inf.schema_opt = i->add_option("--schema", inf.schema, "schema or scenario JSON file");
  inf.scenario_opt = i->add_option("--scenario", inf.scenario, "take the schema from a scenario");
  inf.method_opt = i->add_option("--method", inf.method, "gp-ochiai|gp-tarantula|gp-naish|dt|dr|ensemble");
  inf.theta_opt = i->add_option("--theta", inf.theta, "verdict threshold");
  i->add_option("--out", inf.out, "oracle JSON path");

  PredictArgs pre;
  auto* p = app.add_subcommand("predict", "predict verdicts for unlabeled inputs");
  add_common(p, pre.common);
  p->add_option("--oracle", pre.oracle, "oracle JSON");
  p->add_option("--inputs", pre.inputs, "inputs CSV");
  p->add_option("--out", pre.out, "predictions CSV path");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "score an oracle on a labeled CSV");
  add_common(e, ev.common);
  e->add_option("--oracle", ev.oracle, "oracle JSON");
  e->add_option("--test", ev.test, "labeled test CSV");
  e->add_option("--out", ev.out, "report JSON path");
  e->add_option("--csv", ev.csv, "report CSV path (default: next to --out)");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "evaluate methods over a range of thresholds");
  add_common(s, sw.common);
  sw.train_opt = s->add_option("--train", sw.train, "labeled training CSV");
  sw.test_opt = s->add_option("--test", sw.test, "labeled test CSV");
  sw.schema_opt = s->add_option("--schema", sw.schema, "schema or scenario JSON file");
  sw.scenario_opt = s->add_option("--scenario", sw.scenario, "take the schema from a scenario");
  sw.method_opt = s->add_option("--method", sw.methods, "one or more methods")->delimiter(',');
  sw.thetas_opt = s->add_option("--thetas", sw.thetas, "thresholds (default 0.50..1.00 by 0.05)")
                      ->delimiter(',');
  s->add_option("--out", sw.out, "CSV path");
  s->add_option("--markdown", sw.markdown, "Markdown summary path (default: next to --out)");

  RobustArgs rb;
  auto* r = app.add_subcommand("robust", "accuracy spread across rerun columns");
  add_common(r, rb.common);
  rb.matrix_opt = r->add_option("--matrix", rb.matrix, "rerun matrix CSV");
  rb.test_opt = r->add_option("--test", rb.test, "labeled test CSV");
  rb.schema_opt = r->add_option("--schema", rb.schema, "schema or scenario JSON file");
  rb.scenario_opt = r->add_option("--scenario", rb.scenario, "take the schema from a scenario");
  rb.method_opt = r->add_option("--method", rb.method, "inference method");
  rb.theta_opt = r->add_option("--theta", rb.theta, "verdict threshold");
  rb.repeats_opt = r->add_option("--repeats", rb.repeats, "oracles per column");
  r->add_option("--out", rb.out, "result JSON path");

  std::vector<const char*> argv;
  for (const auto& s_arg : args) argv.push_back(s_arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*g) return cmd_gen(gen, out);
    if (*i) return cmd_infer(inf, out);
    if (*p) return cmd_predict(pre, out);
    if (*e) return cmd_eval(ev, out);
    if (*s) return cmd_sweep(sw, out);
    if (*r) return cmd_robust(rb, out);
  } catch (const EmptyResult& ex) {
    err << "warning: " << ex.warning << "\n";
    return kExitEmpty;
  } catch (const Error& ex) {
    err << "error: " << to_string(ex.code()) << ": " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace aoracle::cli
