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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "aoracle/eval.hpp"
#include "aoracle/io.hpp"
#include "cli.hpp"
#include "fixtures.hpp"

namespace {

namespace fs = std::filesystem;
using namespace aoracle;
using io::Json;

struct CliResult {
  int code;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / ("aoracle_cli_" + std::string(info->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    unsetenv(cli::kConfigEnv);
  }
  void TearDown() override { fs::remove_all(dir); }

  CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "aoracle");
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string read(const std::string& name) const { return io::read_file(path(name)); }
  void write(const std::string& name, const std::string& text) const {
    io::write_file(path(name), text);
  }

  // Small linear-sum data set with train and test halves.
  void make_data() {
    ASSERT_EQ(run({"gen", "--scenario", "linear-sum", "--n", "120", "--runs", "1", "--seed", "3",
                   "--out", path("train")})
                  .code,
              0);
    ASSERT_EQ(run({"gen", "--scenario", "linear-sum", "--n", "80", "--runs", "1", "--seed", "4",
                   "--out", path("test")})
                  .code,
              0);
    write("small.json", R"({"gp": {"pop_size": 20, "generations": 8}})");
  }

  fs::path dir;
};

TEST_F(Cli, VersionAndHelp) {
  CliResult r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(AORACLE_VERSION), std::string::npos);
  EXPECT_EQ(run({"infer", "--help"}).code, 0);
  EXPECT_EQ(run({}).code, cli::kExitValidation);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitValidation);
}

TEST_F(Cli, GenWritesFilesAndManifest) {
  CliResult r = run({"gen", "--scenario", "linear-sum-flaky", "--n", "30", "--runs", "4", "--seed", "2",
               "--out", path("g")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"scenario.json", "schema.json", "matrix.csv", "truth.csv", "run_1.csv",
                        "run_4.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / "g" / f)) << f;
  }
  Json m = Json::parse(read("g/manifest.json"));
  EXPECT_EQ(m["command"], "gen");
  EXPECT_EQ(m["seed"], 2);
  EXPECT_EQ(m["tool_version"], AORACLE_VERSION);
  EXPECT_EQ(m["config_digest"].get<std::string>().size(), 16u);
  InputSchema s = io::schema_from_json(Json::parse(read("g/schema.json")));
  RerunMatrix mat = io::parse_rerun_csv(read("g/matrix.csv"), s);
  EXPECT_EQ(mat.runs(), 4u);
  EXPECT_EQ(io::labeled_csv(column_dataset(mat, 4)), read("g/run_4.csv"));
}

TEST_F(Cli, GenEmptyIsHeaderOnly) {
  ASSERT_EQ(run({"gen", "--scenario", "linear-sum", "--n", "0", "--runs", "2", "--out", path("e")})
                .code,
            0);
  EXPECT_EQ(read("e/truth.csv"), "x1,x2,verdict\n");
  EXPECT_EQ(read("e/matrix.csv"), "x1,x2,verdict_1,verdict_2\n");
}

TEST_F(Cli, GenDeterministicRunsIdentical) {
  ASSERT_EQ(run({"gen", "--scenario", "two-region", "--n", "40", "--runs", "3", "--out", path("d")})
                .code,
            0);
  EXPECT_EQ(read("d/run_1.csv"), read("d/run_3.csv"));
  EXPECT_EQ(read("d/run_1.csv"), read("d/truth.csv"));
}

TEST_F(Cli, GenGoldenSnapshot) {
  ASSERT_EQ(run({"gen", "--scenario", "linear-sum-flaky", "--n", "12", "--runs", "3", "--seed",
                 "1", "--out", path("s")})
                .code,
            0);
  EXPECT_EQ(read("s/matrix.csv"),
            io::read_file(std::string(AORACLE_GOLDEN_DIR) + "/gen_linear_sum_flaky_matrix.csv"));
}

TEST_F(Cli, InferPredictEval) {
  make_data();
  CliResult r = run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum", "--config",
               path("small.json"), "--seed", "5", "--out", path("o.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Oracle o = io::oracle_from_json(Json::parse(read("o.json")));
  ASSERT_FALSE(o.assertions.empty());
  EXPECT_TRUE(fs::exists(path("o.json.manifest.json")));

  ASSERT_EQ(run({"eval", "--oracle", path("o.json"), "--test", path("test/truth.csv"), "--out",
                 path("rep.json")})
                .code,
            0);
  LabeledSet test = io::parse_labeled_csv(read("test/truth.csv"), o.schema);
  EXPECT_EQ(read("rep.json"), io::report_to_json(evaluate_oracle(o, test)).dump(2) + "\n");
  EXPECT_EQ(read("rep.csv"),
            io::report_csv_header() + io::report_csv_row(evaluate_oracle(o, test)));

  ASSERT_EQ(run({"predict", "--oracle", path("o.json"), "--inputs", path("test/truth.csv"),
                 "--out", path("p1.csv")})
                .code,
            0);
  ASSERT_EQ(run({"predict", "--oracle", path("o.json"), "--inputs", path("test/truth.csv"),
                 "--out", path("p2.csv")})
                .code,
            0);
  EXPECT_EQ(read("p1.csv"), read("p2.csv"));
}

TEST_F(Cli, PredictAdsFixture) {
  Oracle o = fixtures::ads_oracle();
  write("ads.json", io::oracle_to_json(o).dump(2));
  write("in.csv", io::inputs_csv(o.schema, fixtures::ads_tests().inputs()));
  ASSERT_EQ(run({"predict", "--oracle", path("ads.json"), "--inputs", path("in.csv"), "--out",
                 path("p.csv")})
                .code,
            0);
  std::istringstream lines(read("p.csv"));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "speed,road_slope,time_of_day,other_vehicles,prediction");
  std::vector<std::string> got;
  while (std::getline(lines, line)) got.push_back(line.substr(line.rfind(',') + 1));
  EXPECT_EQ(got, (std::vector<std::string>{"pass", "fail", "inconclusive", "fail", "pass", "fail"}));

  write("empty.csv", io::inputs_csv(o.schema, {}));
  ASSERT_EQ(run({"predict", "--oracle", path("ads.json"), "--inputs", path("empty.csv"), "--out",
                 path("pe.csv")})
                .code,
            0);
  EXPECT_EQ(read("pe.csv"), "speed,road_slope,time_of_day,other_vehicles,prediction\n");
}

TEST_F(Cli, EvalAdsFixture) {
  write("ads.json", io::oracle_to_json(fixtures::ads_oracle()).dump(2));
  write("t.csv", io::labeled_csv(fixtures::ads_tests()));
  ASSERT_EQ(run({"eval", "--oracle", path("ads.json"), "--test", path("t.csv"), "--out",
                 path("r.json")})
                .code,
            0);
  Json r = Json::parse(read("r.json"));
  EXPECT_EQ(r["accuracy"].get<double>(), 4.0 / 6.0);
  EXPECT_EQ(r["relative_accuracy"].get<double>(), 4.0 / 5.0);
  EXPECT_EQ(r["pass_as_fail"].get<double>(), 1.0 / 6.0);
  EXPECT_EQ(r["fail_as_pass"].get<double>(), 0.0);
}

TEST_F(Cli, EmptyOracleIsExitThree) {
  Oracle empty{fixtures::ads_schema(), 0.7, {}};
  write("empty.json", io::oracle_to_json(empty).dump(2));
  write("t.csv", io::labeled_csv(fixtures::ads_tests()));
  CliResult r = run({"eval", "--oracle", path("empty.json"), "--test", path("t.csv"), "--out",
               path("r.json")});
  EXPECT_EQ(r.code, cli::kExitEmpty);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  Json rep = Json::parse(read("r.json"));
  EXPECT_TRUE(rep["relative_accuracy"].is_null());
  EXPECT_EQ(rep["inconclusive_rate"].get<double>(), 1.0);
  EXPECT_EQ(run({"predict", "--oracle", path("empty.json"), "--inputs", path("t.csv"), "--out",
                 path("p.csv")})
                .code,
            cli::kExitEmpty);
}

TEST_F(Cli, ValidationErrorsAreExitTwo) {
  make_data();
  CliResult r = run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum", "--method",
               "svm", "--out", path("o.json")});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"infer", "--train", path("missing.csv"), "--scenario", "linear-sum", "--out",
                 path("o.json")})
                .code,
            cli::kExitValidation);
  EXPECT_EQ(run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum",
                 "--theta", "1.5", "--out", path("o.json")})
                .code,
            cli::kExitValidation);
  // A training set with no passing row.
  write("allfail.csv", "x1,x2,verdict\n90,90,fail\n80,70,fail\n");
  EXPECT_EQ(run({"infer", "--train", path("allfail.csv"), "--scenario", "linear-sum", "--out",
                 path("o.json")})
                .code,
            cli::kExitValidation);
}

TEST_F(Cli, ConfigFileAndEnvironment) {
  make_data();
  write("cfg.json", R"({"gp": {"pop_size": 20, "generations": 4}, "seed": 9, "theta": 0.8})");
  ASSERT_EQ(run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum",
                 "--config", path("cfg.json"), "--out", path("a.json")})
                .code,
            0);
  Json m = Json::parse(read("a.json.manifest.json"));
  EXPECT_EQ(m["seed"], 9);
  EXPECT_EQ(m["effective_config"]["gp"]["generations"], 4);
  EXPECT_EQ(m["effective_config"]["theta"], 0.8);

  // Flags win over the file.
  ASSERT_EQ(run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum",
                 "--config", path("cfg.json"), "--seed", "2", "--theta", "0.6", "--out",
                 path("b.json")})
                .code,
            0);
  m = Json::parse(read("b.json.manifest.json"));
  EXPECT_EQ(m["seed"], 2);
  EXPECT_EQ(m["effective_config"]["theta"], 0.6);

  // The environment variable names the config path.
  setenv(cli::kConfigEnv, path("cfg.json").c_str(), 1);
  ASSERT_EQ(run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum", "--out",
                 path("c.json")})
                .code,
            0);
  unsetenv(cli::kConfigEnv);
  EXPECT_EQ(read("a.json"), read("c.json"));

  write("bad.json", R"({"gp": {"population": 3}})");
  EXPECT_EQ(run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum",
                 "--config", path("bad.json"), "--out", path("d.json")})
                .code,
            cli::kExitValidation);
}

TEST_F(Cli, JobsDoNotChangeOutputs) {
  make_data();
  for (const char* jobs : {"1", "4"}) {
    std::string o = std::string("o") + jobs + ".json";
    ASSERT_EQ(run({"infer", "--train", path("train/truth.csv"), "--scenario", "linear-sum",
                   "--method", "ensemble", "--config", path("small.json"), "--jobs", jobs,
                   "--out", path(o)})
                  .code,
              0);
  }
  EXPECT_EQ(read("o1.json"), read("o4.json"));
  Json m1 = Json::parse(read("o1.json.manifest.json"));
  Json m4 = Json::parse(read("o4.json.manifest.json"));
  EXPECT_EQ(m1["config_digest"], m4["config_digest"]);
}

TEST_F(Cli, SweepRows) {
  make_data();
  CliResult r = run({"sweep", "--train", path("train/truth.csv"), "--test", path("test/truth.csv"),
               "--scenario", "linear-sum", "--method", "gp-ochiai,dt", "--config",
               path("small.json"), "--out", path("sw.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(read("sw.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 16), "method,theta,acc");
  std::map<std::string, std::vector<std::pair<double, long>>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 10u) << line;
    rows[cells[0]].push_back({std::stod(cells[1]), std::stol(cells[8])});
  }
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& [method, list] : rows) {
    ASSERT_EQ(list.size(), 11u) << method;
    EXPECT_DOUBLE_EQ(list.front().first, 0.5);
    EXPECT_DOUBLE_EQ(list.back().first, 1.0);
    for (std::size_t i = 1; i < list.size(); ++i) {
      EXPECT_LE(list[i].second, list[i - 1].second) << method << " theta " << list[i].first;
    }
  }
  EXPECT_NE(read("sw.md").find("| gp-ochiai | 0.5 |"), std::string::npos);

  ASSERT_EQ(run({"sweep", "--train", path("train/truth.csv"), "--test", path("test/truth.csv"),
                 "--scenario", "linear-sum", "--method", "dt", "--thetas", "0.8", "--out",
                 path("one.csv")})
                .code,
            0);
  std::istringstream one(read("one.csv"));
  int n = 0;
  while (std::getline(one, line)) ++n;
  EXPECT_EQ(n, 2);
}

TEST_F(Cli, RobustOutputs) {
  ASSERT_EQ(run({"gen", "--scenario", "linear-sum-flaky", "--n", "60", "--runs", "3", "--seed",
                 "6", "--out", path("m")})
                .code,
            0);
  write("small.json", R"({"gp": {"pop_size": 16, "generations": 4}})");
  CliResult r = run({"robust", "--matrix", path("m/matrix.csv"), "--test", path("m/truth.csv"),
               "--scenario", "linear-sum", "--repeats", "2", "--config", path("small.json"),
               "--out", path("rob.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(read("rob.json"));
  ASSERT_EQ(j["accuracies"].size(), 3u);
  ASSERT_EQ(j["accuracies"][0].size(), 2u);
  std::vector<double> means = j["column_means"].get<std::vector<double>>();
  EXPECT_DOUBLE_EQ(j["aad"].get<double>(), aad(means));
  for (std::size_t c = 0; c < 3; ++c) {
    double m = (j["accuracies"][c][0].get<double>() + j["accuracies"][c][1].get<double>()) / 2;
    EXPECT_DOUBLE_EQ(means[c], m);
  }
  EXPECT_TRUE(fs::exists(path("rob.csv")));
}

// The installed binary maps errors to the same exit codes.
TEST_F(Cli, BinaryExitCodes) {
  std::string bin = AORACLE_CLI_PATH;
  EXPECT_EQ(std::system((bin + " --version > /dev/null").c_str()), 0);
  int status = std::system((bin + " eval --oracle " + path("none.json") + " --test x --out y 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), cli::kExitValidation);
}

}  // namespace
