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

// ogda_cli: generate and solve Markov games, run OGDA experiments, plot
// metric streams and print sample budgets.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ogda/estimator.h"
#include "ogda/experiment.h"
#include "ogda/game_io.h"
#include "ogda/generator.h"
#include "ogda/ground_truth.h"
#include "ogda/metrics.h"
#include "ogda/rng.h"
#include "ogda/svg_plot.h"

namespace {

using namespace ogda;

// Bad input that the argument parser cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string DefaultOutputDir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "ogda_out";
}

struct GenArgs {
  uint64_t seed = 0;
  int states = 2;
  int actions_p1 = 2;
  int actions_p2 = 2;
  double gamma = 0.9;
  double kappa = 0.05;
  std::string builtin;
  std::string out;
};

struct SolveArgs {
  std::string game;
  std::optional<double> gamma;
  double tolerance = 1e-8;
  std::string out;
};

struct RunArgs {
  std::string config;
  std::string game;
  std::optional<double> gamma;
  std::optional<int> iterations;
  std::string eta;
  std::string alpha;
  std::string estimator;
  std::optional<int> rollout_length;
  std::optional<double> epsilon;
  std::optional<int> cadence;
  std::vector<uint64_t> seeds;
  std::string init;
  std::string output_dir;
  bool strict = false;
  bool gap_every_step = false;
  bool estimator_error = false;
  bool timing = false;
  // rational only
  std::string opponent;
  std::optional<uint64_t> opponent_seed;
};

struct PlotArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> columns = {"mean_dist_sq", "game_gap"};
  std::string title = "OGDA convergence";
  std::string out;
};

struct PlanArgs {
  std::string mode = "sample";
  int actions_p1 = 2;
  int actions_p2 = 2;
  int states = 1;
  double gamma = 0.9;
  double mu = 0.0;
  double epsilon = 0.1;
  double iterations = 1000;
  double delta = 0.05;
  double c_l = 1.0;
  double c_t = 1.0;
  double xi = 0.1;
  std::optional<double> eta;
  std::optional<double> c_hat;
  std::string game;
  int probes = 16;
};

void AddRunOptions(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--config", a.config, "JSON experiment config; flags below override it");
  cmd->add_option("--game", a.game, "builtin:<name> or a game file");
  cmd->add_option("--gamma", a.gamma, "Override the game's discount factor");
  cmd->add_option("-T,--iterations", a.iterations, "Number of iterations");
  cmd->add_option("--eta", a.eta, "Step size, or 'auto' for the theoretical maximum");
  cmd->add_option("--alpha", a.alpha, "Critic schedule: horizon | harmonic");
  cmd->add_option("--estimator", a.estimator, "exact | sampled");
  cmd->add_option("--rollout-length", a.rollout_length, "Rollout length L (sampled mode)");
  cmd->add_option("--epsilon", a.epsilon, "Estimator accuracy ε (sampled mode)");
  cmd->add_option("--cadence", a.cadence, "Log every k-th iteration");
  cmd->add_option("--seeds", a.seeds, "Seeds, one repetition each");
  cmd->add_option("--init", a.init, "Initial policy: uniform | random");
  cmd->add_option("-o,--output-dir", a.output_dir,
                  fmt::format("Output directory (default ${} or ./ogda_out)", kOutputDirEnv));
  cmd->add_flag("--strict", a.strict, "Reject η above the theoretical maximum");
  cmd->add_flag("--gap-every-step", a.gap_every_step,
                "Evaluate the game duality gap every iteration");
  cmd->add_flag("--estimator-error", a.estimator_error, "Log max estimator error vs exact");
  cmd->add_flag("--timing", a.timing, "Add a wall_ms column (output no longer reproducible)");
}

ExperimentConfig BuildConfig(const RunArgs& a) {
  ExperimentConfig config;
  if (!a.config.empty()) {
    config = ParseExperimentConfig(ReadFile(a.config));
  } else {
    config.run.eta = 0.05;
    config.output_dir = DefaultOutputDir();
  }
  if (!a.game.empty()) {
    const std::optional<double> gamma = config.game.gamma;
    config.game = GameSourceFromString(a.game);
    config.game.gamma = gamma;
  }
  if (a.gamma) config.game.gamma = a.gamma;
  if (a.iterations) config.run.iterations = *a.iterations;
  if (!a.eta.empty()) {
    if (a.eta == "auto") {
      config.run.eta.reset();
    } else {
      try {
        config.run.eta = std::stod(a.eta);
      } catch (const std::exception&) {
        throw UsageError(fmt::format("--eta: expected a number or 'auto', got '{}'", a.eta));
      }
    }
  }
  if (!a.alpha.empty()) config.run.alpha = ParseAlphaKind(a.alpha);
  if (!a.estimator.empty()) {
    if (a.estimator == "exact") {
      config.run.estimator.mode = EstimatorMode::kExact;
    } else if (a.estimator == "sampled") {
      config.run.estimator.mode = EstimatorMode::kSampled;
    } else {
      throw UsageError(fmt::format("--estimator: expected exact or sampled, got '{}'", a.estimator));
    }
  }
  if (a.rollout_length) config.run.estimator.rollout_length = *a.rollout_length;
  if (a.epsilon) config.run.estimator.epsilon = *a.epsilon;
  if (a.cadence) config.run.cadence = *a.cadence;
  if (!a.seeds.empty()) config.seeds = a.seeds;
  if (!a.init.empty()) {
    if (a.init == "uniform") {
      config.run.init = InitKind::kUniform;
    } else if (a.init == "random") {
      config.run.init = InitKind::kRandom;
    } else {
      throw UsageError(fmt::format("--init: expected uniform or random, got '{}'", a.init));
    }
  }
  if (!a.output_dir.empty()) config.output_dir = a.output_dir;
  if (a.strict) config.run.strict = true;
  if (a.gap_every_step) config.metrics.gap_every_step = true;
  if (a.estimator_error) config.metrics.estimator_error = true;
  if (a.timing) config.metrics.timing = true;
  config.metrics.cadence = config.run.cadence;
  if (config.run.iterations < 1) throw UsageError("--iterations must be ≥ 1");
  if (config.run.cadence < 1) throw UsageError("--cadence must be ≥ 1");
  return config;
}

void PrintRunSummary(const ExperimentResult& result) {
  for (const auto& f : result.run_files) std::cout << "wrote " << f << "\n";
  std::cout << "wrote " << result.aggregate_file << "\n";
}

int Gen(const GenArgs& a) {
  MarkovGame game;
  GeneratorInfo info;
  if (!a.builtin.empty()) {
    game = Builtin(a.builtin);
    info.family = "builtin:" + a.builtin;
  } else {
    game = RandomGame(a.seed, a.states, a.actions_p1, a.actions_p2, a.gamma, a.kappa);
    info = {.family = "random", .seed = a.seed, .kappa = a.kappa};
  }
  SaveGame(game, a.out, info);
  std::cout << "wrote " << a.out << "\n";
  return 0;
}

int Solve(const SolveArgs& a) {
  GameSource source = GameSourceFromString(a.game);
  source.gamma = a.gamma;
  const ResolvedGame resolved = ResolveGame(source);
  const GroundTruth truth = ShapleySolve(resolved.game, {.tolerance = a.tolerance});
  for (int s = 0; s < resolved.game.num_states(); ++s) {
    std::cout << fmt::format("V*[{}] = {}\n", s, truth.v_star[s]);
  }
  std::string out = a.out;
  if (out.empty()) {
    out = (std::filesystem::path(DefaultOutputDir()) / "solution.json").string();
  }
  WriteFile(out, GroundTruthToText(truth));
  std::cerr << "wrote " << out << "\n";
  return 0;
}

int Run(const RunArgs& a) {
  PrintRunSummary(RunExperiment(BuildConfig(a)));
  return 0;
}

int Rational(const RunArgs& a) {
  if (a.opponent.empty() == !a.opponent_seed.has_value()) {
    throw UsageError("rational: give exactly one of --opponent or --opponent-seed");
  }
  const ExperimentConfig config = BuildConfig(a);
  const ResolvedGame resolved = ResolveGame(config.game);
  Policy opponent;
  if (!a.opponent.empty()) {
    opponent = LoadPolicySide(a.opponent, "y");
  } else {
    Rng rng(*a.opponent_seed);
    const int s_count = resolved.game.num_states();
    const int b_count = resolved.game.num_actions_p2();
    std::vector<double> probs;
    for (int s = 0; s < s_count; ++s) {
      for (double p : rng.SimplexPoint(b_count)) probs.push_back(p);
    }
    opponent = Policy(s_count, b_count, std::move(probs));
  }
  PrintRunSummary(RunRationalExperiment(config, opponent));
  return 0;
}

bool HasColumn(const CsvTable& table, const std::string& name) {
  return std::find(table.columns.begin(), table.columns.end(), name) != table.columns.end();
}

int Plot(const PlotArgs& a) {
  std::vector<PlotSeries> series;
  for (const auto& path : a.inputs) {
    CsvTable table = ParseCsv(ReadFile(path));
    if (table.rows.empty()) throw UsageError(fmt::format("plot: '{}' has no data rows", path));
    for (const auto& c : a.columns) {
      if (!HasColumn(table, c) && !HasColumn(table, c + "_median")) {
        throw UsageError(fmt::format("plot: '{}' has no column '{}'", path, c));
      }
    }
    series.push_back({std::filesystem::path(path).stem().string(), std::move(table)});
  }
  std::vector<std::string> columns = a.columns;
  // Aggregate files carry <metric>_median columns.
  for (auto& c : columns) {
    if (!HasColumn(series.front().table, c)) c += "_median";
  }
  std::string out = a.out;
  if (out.empty()) out = (std::filesystem::path(DefaultOutputDir()) / "plot.svg").string();
  WriteFile(out, PlotSvg(series, columns, a.title));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int Plan(const PlanArgs& a) {
  if (a.mode == "sample") {
    double mu = a.mu;
    if (mu <= 0.0 && !a.game.empty()) {
      mu = EstimateMu(ResolveGame(GameSourceFromString(a.game)).game, a.probes, 0);
      std::cout << fmt::format("mu (estimated) = {}\n", mu);
    }
    const SampleBudget b = PlanSampleBudget(a.actions_p1, a.actions_p2, a.gamma, mu, a.epsilon,
                                            a.iterations, a.delta, a.c_l);
    std::cout << fmt::format("epsilon' = {}\n", b.epsilon_prime);
    std::cout << fmt::format("rollout_length = {}\n", b.rollout_length);
    std::cout << fmt::format("total_samples = {}\n", b.rollout_length * b.iterations);
    return 0;
  }
  BudgetMode mode;
  if (a.mode == "average-gap") {
    mode = BudgetMode::kAverageGap;
  } else if (a.mode == "last-iterate") {
    mode = BudgetMode::kLastIterate;
  } else {
    throw UsageError(
        fmt::format("plan: --mode must be sample, average-gap or last-iterate, got '{}'", a.mode));
  }
  const double eta = a.eta.value_or(EtaMax(a.gamma, a.states));
  const AccuracyBudget b = PlanAccuracyBudget(a.xi, mode, a.states, a.actions_p1, a.actions_p2,
                                              a.gamma, eta, a.c_hat, a.c_t);
  std::cout << fmt::format("eta = {}\n", b.eta);
  std::cout << fmt::format("iterations = {}\n", b.iterations);
  std::cout << fmt::format("log_factor = {}\n", b.log_factor);
  std::cout << fmt::format("epsilon = {}\n", b.epsilon);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OGDA with a slow critic for two-player zero-sum Markov games"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random game (or a fixture) to a game file");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("-S,--states", gen.states, "Number of states")->check(CLI::PositiveNumber);
  gen_cmd->add_option("-A,--actions-p1", gen.actions_p1, "Player 1 actions")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("-B,--actions-p2", gen.actions_p2, "Player 2 actions")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--gamma", gen.gamma, "Discount factor in [1/2, 1)");
  gen_cmd->add_option("--kappa", gen.kappa, "Uniform transition mixing weight");
  gen_cmd->add_option("--builtin", gen.builtin, "Write a named fixture instead");
  gen_cmd->add_option("-o,--out", gen.out, "Output game file")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute minimax values by Shapley iteration");
  solve_cmd->add_option("game", solve.game, "builtin:<name> or a game file")->required();
  solve_cmd->add_option("--gamma", solve.gamma, "Override the discount factor");
  solve_cmd->add_option("--tol", solve.tolerance, "Target ‖V − V*‖∞")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("-o,--out", solve.out, "Solution file (default <output dir>/solution.json)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Self-play OGDA experiment");
  AddRunOptions(run_cmd, run);

  RunArgs rational;
  auto* rational_cmd =
      app.add_subcommand("rational", "Player 1 learns against a fixed stationary opponent");
  AddRunOptions(rational_cmd, rational);
  rational_cmd->add_option("--opponent", rational.opponent, "Policy file with a \"y\" entry");
  rational_cmd->add_option("--opponent-seed", rational.opponent_seed,
                           "Draw a random opponent from this seed");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Log-scale SVG line charts from metric CSVs");
  plot_cmd->add_option("inputs", plot.inputs, "Metric CSV files")->required();
  plot_cmd->add_option("-c,--columns", plot.columns, "Columns to chart");
  plot_cmd->add_option("--title", plot.title, "Chart title");
  plot_cmd->add_option("-o,--out", plot.out, "Output SVG (default <output dir>/plot.svg)");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Print sample or accuracy budgets");
  plan_cmd->add_option("--mode", plan.mode, "sample | average-gap | last-iterate");
  plan_cmd->add_option("-S,--states", plan.states, "Number of states");
  plan_cmd->add_option("-A,--actions-p1", plan.actions_p1, "Player 1 actions");
  plan_cmd->add_option("-B,--actions-p2", plan.actions_p2, "Player 2 actions");
  plan_cmd->add_option("--gamma", plan.gamma, "Discount factor");
  plan_cmd->add_option("--mu", plan.mu, "Irreducibility constant");
  plan_cmd->add_option("--game", plan.game, "Estimate mu from this game when --mu is not given");
  plan_cmd->add_option("--probes", plan.probes, "Policy pairs probed when estimating mu");
  plan_cmd->add_option("--epsilon", plan.epsilon, "Target estimator accuracy");
  plan_cmd->add_option("-T,--iterations", plan.iterations, "Iteration count");
  plan_cmd->add_option("--delta", plan.delta, "Failure probability");
  plan_cmd->add_option("--c-l", plan.c_l, "Rollout-length constant");
  plan_cmd->add_option("--c-t", plan.c_t, "Iteration-count constant");
  plan_cmd->add_option("--xi", plan.xi, "Target accuracy");
  plan_cmd->add_option("--eta", plan.eta, "Step size (default: theoretical maximum)");
  plan_cmd->add_option("--c-hat", plan.c_hat, "Margin constant (last-iterate mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen_cmd) return Gen(gen);
    if (*solve_cmd) return Solve(solve);
    if (*run_cmd) return Run(run);
    if (*rational_cmd) return Rational(rational);
    if (*plot_cmd) return Plot(plot);
    if (*plan_cmd) return Plan(plan);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
