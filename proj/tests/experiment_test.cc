// Copyright 2026 The ogda-markov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "ogda/experiment.h"
#include "ogda/game_io.h"
#include "ogda/generator.h"

namespace ogda {
namespace {

namespace fs = std::filesystem;

std::string TempDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("ogda_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(OGDA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string CliOutput(const std::string& args) {
  const std::string out = (fs::path(::testing::TempDir()) / "ogda_cli_stdout.txt").string();
  const std::string cmd = std::string(OGDA_CLI_PATH) + " " + args + " >" + out + " 2>/dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0) << cmd;
  return ReadFile(out);
}

constexpr const char* kConfig = R"({
  "game": {"builtin": "switching-mp"},
  "run": {"iterations": 200, "eta": 0.05, "alpha": "horizon", "cadence": 20,
          "estimator": {"mode": "sampled", "rollout_length": 50, "epsilon": 0.2},
          "initial_policy": {"x": [[0.9, 0.1], [0.3, 0.7]], "y": [[0.2, 0.8], [0.6, 0.4]]}},
  "metrics": {"gap_every_step": true},
  "seeds": [1, 2, 3]
})";

TEST(ExperimentConfigTest, ParsesAllSections) {
  const ExperimentConfig cfg = ParseExperimentConfig(kConfig);
  EXPECT_EQ(cfg.game.kind, GameSource::Kind::kBuiltin);
  EXPECT_EQ(cfg.game.builtin, "switching-mp");
  EXPECT_EQ(cfg.run.iterations, 200);
  EXPECT_EQ(cfg.run.eta, 0.05);
  EXPECT_EQ(cfg.run.cadence, 20);
  EXPECT_EQ(cfg.metrics.cadence, 20);
  EXPECT_EQ(cfg.run.estimator.mode, EstimatorMode::kSampled);
  EXPECT_EQ(cfg.run.estimator.rollout_length, 50);
  EXPECT_EQ(cfg.run.init, InitKind::kExplicit);
  EXPECT_EQ(cfg.run.initial_policy.x[1][1], 0.7);
  EXPECT_TRUE(cfg.metrics.gap_every_step);
  EXPECT_EQ(cfg.seeds, (std::vector<uint64_t>{1, 2, 3}));
}

TEST(ExperimentConfigTest, SerializationRoundTripsAndHashIsStable) {
  const ExperimentConfig cfg = ParseExperimentConfig(kConfig);
  const std::string text = ExperimentConfigToJson(cfg);
  const ExperimentConfig back = ParseExperimentConfig(text);
  EXPECT_EQ(ExperimentConfigToJson(back), text);
  EXPECT_EQ(ConfigHash(back), ConfigHash(cfg));
  ExperimentConfig other = cfg;
  other.run.iterations = 201;
  EXPECT_NE(ConfigHash(other), ConfigHash(cfg));
}

TEST(ExperimentConfigTest, RejectsBadConfigs) {
  EXPECT_THROW(ParseExperimentConfig("[1]"), Error);
  EXPECT_THROW(ParseExperimentConfig("{oops"), Error);
  EXPECT_THROW(ParseExperimentConfig(R"({"seeds": []})"), Error);
  EXPECT_THROW(ParseExperimentConfig(R"({"run": {"iterations": 0}})"), Error);
  EXPECT_THROW(ParseExperimentConfig(R"({"run": {"eta": "fast"}})"), Error);
  EXPECT_THROW(ParseExperimentConfig(R"({"game": {"unknown": 1}})"), Error);
  EXPECT_THROW(ParseExperimentConfig(R"({"run": {"estimator": {"mode": "magic"}}})"), Error);
}

TEST(GameSourceTest, ResolvesEveryKind) {
  EXPECT_EQ(ResolveGame(GameSourceFromString("builtin:mp1")).game, Builtin("mp1"));
  const std::string dir = TempDir("source");
  const std::string path = dir + "/g.json";
  SaveGame(RandomGame(3, 2, 2, 2, 0.8), path);
  EXPECT_EQ(ResolveGame(GameSourceFromString(path)).game, RandomGame(3, 2, 2, 2, 0.8));
  GameSource gen;
  gen.kind = GameSource::Kind::kGenerator;
  gen.seed = 3;
  gen.gamma = 0.8;
  EXPECT_EQ(ResolveGame(gen).game, RandomGame(3, 2, 2, 2, 0.8));
  EXPECT_THROW(ResolveGame(GameSourceFromString("builtin:nope")), Error);
  EXPECT_THROW(ResolveGame(GameSourceFromString(dir + "/missing.json")), Error);
}

TEST(RunExperimentTest, WritesRunsAndAggregate) {
  ExperimentConfig cfg = ParseExperimentConfig(kConfig);
  cfg.output_dir = TempDir("run");
  const ExperimentResult result = RunExperiment(cfg);
  ASSERT_EQ(result.run_files.size(), 3u);
  std::vector<CsvTable> runs;
  for (const auto& f : result.run_files) {
    const CsvTable table = ParseCsv(ReadFile(f));
    EXPECT_EQ(table.rows.size(), 10u);
    EXPECT_NE(std::find(table.metadata.begin(), table.metadata.end(),
                        "config_hash: " + ConfigHash(cfg)),
              table.metadata.end());
    runs.push_back(table);
  }
  // Aggregate recomputes exactly from the per-repetition files.
  const CsvTable agg = ParseCsv(ReadFile(result.aggregate_file));
  EXPECT_EQ(WriteCsv(Aggregate(runs)).substr(WriteCsv(Aggregate(runs)).find("\nt,")),
            WriteCsv(agg).substr(WriteCsv(agg).find("\nt,")));
}

TEST(RunExperimentTest, RepeatedRunsAreByteIdentical) {
  ExperimentConfig cfg = ParseExperimentConfig(kConfig);
  cfg.output_dir = TempDir("det_a");
  const ExperimentResult a = RunExperiment(cfg);
  cfg.output_dir = TempDir("det_b");
  const ExperimentResult b = RunExperiment(cfg);
  for (size_t i = 0; i < a.run_files.size(); ++i) {
    EXPECT_EQ(ReadFile(a.run_files[i]), ReadFile(b.run_files[i]));
  }
  EXPECT_EQ(ReadFile(a.aggregate_file), ReadFile(b.aggregate_file));
}

TEST(RunExperimentTest, RationalExperiment) {
  ExperimentConfig cfg = ParseExperimentConfig(R"({
    "game": {"builtin": "switching-mp"},
    "run": {"iterations": 100, "eta": 0.05, "cadence": 10},
    "seeds": [4, 5]
  })");
  cfg.output_dir = TempDir("rational");
  const ExperimentResult result =
      RunRationalExperiment(cfg, Policy::FromRows({{0.7, 0.3}, {0.4, 0.6}}));
  ASSERT_EQ(result.runs.size(), 2u);
  EXPECT_EQ(result.runs[0].rows.size(), 10u);
  EXPECT_TRUE(fs::exists(result.aggregate_file));
}

TEST(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(RunCli("--help"), 0);
  for (const char* sub : {"gen", "solve", "run", "rational", "plot", "plan"}) {
    EXPECT_EQ(RunCli(std::string(sub) + " --help"), 0) << sub;
  }
  EXPECT_EQ(RunCli(""), 1);
  EXPECT_EQ(RunCli("frobnicate"), 1);
  EXPECT_EQ(RunCli("gen"), 1);
  EXPECT_EQ(RunCli("run --estimator magic"), 1);
}

TEST(CliTest, SolvePrintsValue) {
  const std::string dir = TempDir("cli_solve");
  const std::string out = CliOutput("solve builtin:mp1 -o " + dir + "/sol.json");
  const size_t pos = out.find("V*[0] = ");
  ASSERT_NE(pos, std::string::npos) << out;
  EXPECT_NEAR(std::stod(out.substr(pos + 8)), 5.0, 1e-8);
  EXPECT_TRUE(fs::exists(dir + "/sol.json"));
}

TEST(CliTest, RunWritesExpectedRows) {
  const std::string dir = TempDir("cli_run");
  CliOutput("run --game builtin:const -T 100 --cadence 10 -o " + dir);
  const CsvTable table = ParseCsv(ReadFile(dir + "/run_seed0.csv"));
  EXPECT_EQ(table.rows.size(), 10u);
  EXPECT_EQ(table.metadata.front(), "schema: ogda-metrics/1");
}

TEST(CliTest, PlotEmptyCsvIsUsageError) {
  const std::string dir = TempDir("cli_plot");
  WriteFile(dir + "/empty.csv", "");
  EXPECT_EQ(RunCli("plot " + dir + "/empty.csv -o " + dir + "/p.svg"), 1);
  WriteFile(dir + "/header.csv", "t,mean_dist_sq\n");
  EXPECT_EQ(RunCli("plot " + dir + "/header.csv -o " + dir + "/p.svg"), 1);
}

TEST(CliTest, PlotIsDeterministic) {
  const std::string dir = TempDir("cli_plot_det");
  CliOutput("run --game builtin:mp1 -T 50 --cadence 5 -o " + dir);
  CliOutput("plot " + dir + "/run_seed0.csv -c game_gap -o " + dir + "/a.svg");
  CliOutput("plot " + dir + "/run_seed0.csv -c game_gap -o " + dir + "/b.svg");
  EXPECT_EQ(ReadFile(dir + "/a.svg"), ReadFile(dir + "/b.svg"));
  CliOutput("plot " + dir + "/aggregate.csv -o " + dir + "/agg.svg");
  EXPECT_TRUE(fs::exists(dir + "/agg.svg"));
}

TEST(CliTest, RuntimeErrorsExitTwo) {
  EXPECT_EQ(RunCli("solve /nonexistent/game.json"), 2);
  EXPECT_EQ(RunCli("plan --mode sample --mu 0"), 2);
}

TEST(CliTest, GenAndPlan) {
  const std::string dir = TempDir("cli_gen");
  CliOutput("gen --seed 7 -S 3 -A 2 -B 2 --gamma 0.9 --kappa 0.1 -o " + dir + "/g.json");
  EXPECT_EQ(LoadGame(dir + "/g.json"), RandomGame(7, 3, 2, 2, 0.9, 0.1));
  const std::string plan = CliOutput("plan --mode sample -A 2 -B 2 --gamma 0.5 --mu 1 "
                                     "--epsilon 1 -T 2.718281828459045 --delta 1");
  EXPECT_NE(plan.find("rollout_length = 32"), std::string::npos) << plan;
  const std::string plan2 = CliOutput("plan --mode sample --game builtin:switching-mp");
  EXPECT_NE(plan2.find("mu (estimated)"), std::string::npos) << plan2;
  EXPECT_NE(CliOutput("plan --mode last-iterate --c-hat 0.5").find("iterations"),
            std::string::npos);
}

TEST(CliTest, RationalNeedsOpponent) {
  EXPECT_EQ(RunCli("rational --game builtin:mp1 -T 10"), 1);
  const std::string dir = TempDir("cli_rational");
  EXPECT_EQ(RunCli("rational --game builtin:mp1 -T 10 --opponent-seed 3 -o " + dir), 0);
  EXPECT_TRUE(fs::exists(dir + "/rational_seed0.csv"));
}

}  // namespace
}  // namespace ogda
