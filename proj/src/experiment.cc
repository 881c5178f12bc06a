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

#include "ogda/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "ogda/estimator.h"
#include "ogda/generator.h"
#include "ogda/ground_truth.h"

namespace ogda {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

template <typename T>
T Get(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(fmt::format("config: field '{}' has the wrong type", key));
  }
}

json RowsJson(const Policy& p) { return json(p.Rows()); }

Policy PolicyFromJson(const json& v, const char* key) {
  try {
    return Policy::FromRows(v.get<std::vector<std::vector<double>>>());
  } catch (const json::exception&) {
    throw Error(fmt::format("config: initial_policy.{} must be an array of rows", key));
  }
}

std::string DefaultOutputDir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "ogda_out";
}

// Runs job(i) for i in [0, n) on min(n, hardware threads) workers; rethrows
// the first failure after all workers stop.
template <typename Job>
void RunPool(size_t n, Job job) {
  const size_t workers = std::max<size_t>(1, std::min<size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::string> Metadata(const ExperimentConfig& config, uint64_t seed,
                                  const std::string& kind) {
  return {fmt::format("schema: {}", kMetricsSchema), fmt::format("kind: {}", kind),
          fmt::format("version: {}", kVersion), fmt::format("config_hash: {}", ConfigHash(config)),
          fmt::format("seed: {}", seed)};
}

}  // namespace

GameSource GameSourceFromString(const std::string& spec) {
  GameSource source;
  if (spec.rfind("builtin:", 0) == 0) {
    source.kind = GameSource::Kind::kBuiltin;
    source.builtin = spec.substr(8);
  } else {
    source.kind = GameSource::Kind::kFile;
    source.path = spec;
  }
  return source;
}

ExperimentConfig ParseExperimentConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(fmt::format("config: parse error: {}", e.what()));
  }
  if (!doc.is_object()) throw Error("config: top level must be an object");
  ExperimentConfig config;

  if (auto g = doc.find("game"); g != doc.end()) {
    if (g->contains("builtin")) {
      config.game.kind = GameSource::Kind::kBuiltin;
      config.game.builtin = Get<std::string>(*g, "builtin", "mp1");
    } else if (g->contains("file")) {
      config.game.kind = GameSource::Kind::kFile;
      config.game.path = Get<std::string>(*g, "file", "");
    } else if (g->contains("generator")) {
      const json& gen = (*g)["generator"];
      config.game.kind = GameSource::Kind::kGenerator;
      config.game.seed = Get<uint64_t>(gen, "seed", 0);
      config.game.num_states = Get<int>(gen, "num_states", 2);
      config.game.num_actions_p1 = Get<int>(gen, "num_actions_p1", 2);
      config.game.num_actions_p2 = Get<int>(gen, "num_actions_p2", 2);
      config.game.kappa = Get<double>(gen, "kappa", 0.05);
      if (gen.contains("gamma")) config.game.gamma = Get<double>(gen, "gamma", 0.9);
    } else {
      throw Error("config: game needs one of builtin, file, generator");
    }
    if (g->contains("gamma")) config.game.gamma = Get<double>(*g, "gamma", 0.9);
  }

  if (auto r = doc.find("run"); r != doc.end()) {
    RunConfig& run = config.run;
    run.iterations = Get<int>(*r, "iterations", run.iterations);
    if (auto eta = r->find("eta"); eta != r->end()) {
      if (eta->is_string()) {
        if (eta->get<std::string>() != "auto") throw Error("config: eta must be a number or \"auto\"");
        run.eta.reset();
      } else if (eta->is_number()) {
        run.eta = eta->get<double>();
      } else {
        throw Error("config: eta must be a number or \"auto\"");
      }
    } else {
      run.eta = 0.05;
    }
    run.alpha = ParseAlphaKind(Get<std::string>(*r, "alpha", "horizon"));
    if (auto e = r->find("estimator"); e != r->end()) {
      const std::string mode = Get<std::string>(*e, "mode", "exact");
      if (mode == "exact") {
        run.estimator.mode = EstimatorMode::kExact;
      } else if (mode == "sampled") {
        run.estimator.mode = EstimatorMode::kSampled;
      } else {
        throw Error(fmt::format("config: unknown estimator mode '{}'", mode));
      }
      run.estimator.rollout_length = Get<int>(*e, "rollout_length", run.estimator.rollout_length);
      run.estimator.epsilon = Get<double>(*e, "epsilon", run.estimator.epsilon);
      run.estimator.reset_each_iteration =
          Get<bool>(*e, "reset_each_iteration", run.estimator.reset_each_iteration);
      run.estimator.initial_state = Get<int>(*e, "initial_state", run.estimator.initial_state);
    }
    if (auto init = r->find("initial_policy"); init != r->end()) {
      if (init->is_string()) {
        const std::string kind = init->get<std::string>();
        if (kind == "uniform") {
          run.init = InitKind::kUniform;
        } else if (kind == "random") {
          run.init = InitKind::kRandom;
        } else {
          throw Error(fmt::format("config: unknown initial_policy '{}'", kind));
        }
      } else if (init->is_object()) {
        run.init = InitKind::kExplicit;
        if (init->contains("x")) run.initial_policy.x = PolicyFromJson((*init)["x"], "x");
        if (init->contains("y")) run.initial_policy.y = PolicyFromJson((*init)["y"], "y");
      } else {
        throw Error("config: initial_policy must be a string or an object");
      }
    }
    run.cadence = Get<int>(*r, "cadence", run.cadence);
    run.strict = Get<bool>(*r, "strict", run.strict);
    if (run.iterations < 1) throw Error("config: run.iterations must be ≥ 1");
    if (run.cadence < 1) throw Error("config: run.cadence must be ≥ 1");
  } else {
    config.run.eta = 0.05;
  }

  if (auto m = doc.find("metrics"); m != doc.end()) {
    config.metrics.gap_every_step = Get<bool>(*m, "gap_every_step", false);
    config.metrics.estimator_error = Get<bool>(*m, "estimator_error", false);
    config.metrics.timing = Get<bool>(*m, "timing", false);
  }
  config.metrics.cadence = config.run.cadence;
  config.ground_truth_tolerance = Get<double>(doc, "ground_truth_tolerance", 1e-8);
  config.output_dir = Get<std::string>(doc, "output_dir", DefaultOutputDir());
  if (doc.contains("seeds")) {
    config.seeds = Get<std::vector<uint64_t>>(doc, "seeds", {});
    if (config.seeds.empty()) throw Error("config: seeds must list at least one seed");
  }
  return config;
}

std::string ExperimentConfigToJson(const ExperimentConfig& config) {
  json doc;
  json game;
  switch (config.game.kind) {
    case GameSource::Kind::kBuiltin:
      game["builtin"] = config.game.builtin;
      break;
    case GameSource::Kind::kFile:
      game["file"] = config.game.path;
      break;
    case GameSource::Kind::kGenerator:
      game["generator"] = {{"seed", config.game.seed},
                           {"num_states", config.game.num_states},
                           {"num_actions_p1", config.game.num_actions_p1},
                           {"num_actions_p2", config.game.num_actions_p2},
                           {"kappa", config.game.kappa}};
      break;
  }
  if (config.game.gamma) game["gamma"] = *config.game.gamma;
  doc["game"] = game;

  const RunConfig& run = config.run;
  json r;
  r["iterations"] = run.iterations;
  r["eta"] = run.eta ? json(*run.eta) : json("auto");
  r["alpha"] = AlphaKindName(run.alpha);
  json est;
  est["mode"] = run.estimator.mode == EstimatorMode::kExact ? "exact" : "sampled";
  if (run.estimator.mode == EstimatorMode::kSampled) {
    est["rollout_length"] = run.estimator.rollout_length;
    est["epsilon"] = run.estimator.epsilon;
    est["reset_each_iteration"] = run.estimator.reset_each_iteration;
    est["initial_state"] = run.estimator.initial_state;
  }
  r["estimator"] = est;
  switch (run.init) {
    case InitKind::kUniform:
      r["initial_policy"] = "uniform";
      break;
    case InitKind::kRandom:
      r["initial_policy"] = "random";
      break;
    case InitKind::kExplicit: {
      json init;
      if (run.initial_policy.x.num_states() > 0) init["x"] = RowsJson(run.initial_policy.x);
      if (run.initial_policy.y.num_states() > 0) init["y"] = RowsJson(run.initial_policy.y);
      r["initial_policy"] = init;
      break;
    }
  }
  r["cadence"] = run.cadence;
  r["strict"] = run.strict;
  doc["run"] = r;
  doc["metrics"] = {{"gap_every_step", config.metrics.gap_every_step},
                    {"estimator_error", config.metrics.estimator_error},
                    {"timing", config.metrics.timing}};
  doc["ground_truth_tolerance"] = config.ground_truth_tolerance;
  doc["output_dir"] = config.output_dir;
  doc["seeds"] = config.seeds;
  return doc.dump(2);
}

std::string ConfigHash(const ExperimentConfig& config) {
  // The output location does not affect results, so it is left out.
  ExperimentConfig hashed = config;
  hashed.output_dir.clear();
  const std::string canonical = ExperimentConfigToJson(hashed);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

ResolvedGame ResolveGame(const GameSource& source) {
  ResolvedGame out;
  switch (source.kind) {
    case GameSource::Kind::kBuiltin:
      out.game = Builtin(source.builtin, source.gamma);
      out.info.family = "builtin:" + source.builtin;
      break;
    case GameSource::Kind::kFile: {
      GameSpecFile spec = LoadGameSpec(source.path);
      out.game = source.gamma ? spec.game.WithGamma(*source.gamma) : spec.game;
      out.info = spec.generator;
      break;
    }
    case GameSource::Kind::kGenerator:
      out.game = RandomGame(source.seed, source.num_states, source.num_actions_p1,
                            source.num_actions_p2, source.gamma.value_or(0.9), source.kappa);
      out.info.family = "random";
      out.info.seed = source.seed;
      out.info.kappa = source.kappa;
      break;
  }
  const ValidationReport report = ValidateGame(out.game);
  if (!report.ok()) throw Error("game failed validation: " + report.ToString());
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  if (config.seeds.empty()) throw Error("experiment needs at least one seed");
  const ResolvedGame resolved = ResolveGame(config.game);
  const GroundTruth truth =
      ShapleySolve(resolved.game, {.tolerance = config.ground_truth_tolerance});
  ExperimentResult result;
  result.runs.resize(config.seeds.size());
  result.run_files.resize(config.seeds.size());
  RecorderOptions recorder_options = config.metrics;
  recorder_options.cadence = config.run.cadence;
  RunPool(config.seeds.size(), [&](size_t i) {
    RunConfig run = config.run;
    run.seed = config.seeds[i];
    auto estimator = MakeEstimator(run.estimator, resolved.game.gamma(), run.seed);
    MetricsRecorder recorder(resolved.game, truth, recorder_options);
    RunSelfPlay(resolved.game, run, *estimator, &recorder);
    result.runs[i] = recorder.Table(Metadata(config, run.seed, "selfplay"));
    result.run_files[i] =
        (std::filesystem::path(config.output_dir) / fmt::format("run_seed{}.csv", run.seed))
            .string();
    WriteFile(result.run_files[i], WriteCsv(result.runs[i]));
  });
  result.aggregate = Aggregate(result.runs);
  result.aggregate.metadata.push_back(fmt::format("config_hash: {}", ConfigHash(config)));
  result.aggregate_file = (std::filesystem::path(config.output_dir) / "aggregate.csv").string();
  WriteFile(result.aggregate_file, WriteCsv(result.aggregate));
  return result;
}

ExperimentResult RunRationalExperiment(const ExperimentConfig& config, const Policy& opponent) {
  if (config.seeds.empty()) throw Error("experiment needs at least one seed");
  const ResolvedGame resolved = ResolveGame(config.game);
  const MarkovGame reduced = ReduceGameForOpponent(resolved.game, opponent);
  const GroundTruth truth = ShapleySolve(reduced, {.tolerance = config.ground_truth_tolerance});
  ExperimentResult result;
  result.runs.resize(config.seeds.size());
  result.run_files.resize(config.seeds.size());
  RecorderOptions recorder_options = config.metrics;
  recorder_options.cadence = config.run.cadence;
  RunPool(config.seeds.size(), [&](size_t i) {
    RunConfig run = config.run;
    run.seed = config.seeds[i];
    std::unique_ptr<Estimator> estimator;
    if (run.estimator.mode == EstimatorMode::kExact) {
      estimator = std::make_unique<ExactEstimator>();
    } else {
      estimator = std::make_unique<FixedOpponentSampler>(resolved.game, opponent, run.estimator,
                                                         run.seed);
    }
    RationalityRecorder recorder(resolved.game, opponent, truth, recorder_options);
    RunSinglePlayer(resolved.game, opponent, run, *estimator, &recorder);
    result.runs[i] = recorder.Table(Metadata(config, run.seed, "rational"));
    result.run_files[i] =
        (std::filesystem::path(config.output_dir) / fmt::format("rational_seed{}.csv", run.seed))
            .string();
    WriteFile(result.run_files[i], WriteCsv(result.runs[i]));
  });
  result.aggregate = Aggregate(result.runs);
  result.aggregate.metadata.push_back(fmt::format("config_hash: {}", ConfigHash(config)));
  result.aggregate_file = (std::filesystem::path(config.output_dir) / "aggregate.csv").string();
  WriteFile(result.aggregate_file, WriteCsv(result.aggregate));
  return result;
}

}  // namespace ogda
