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

#ifndef OGDA_EXPERIMENT_H_
#define OGDA_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ogda/game.h"
#include "ogda/game_io.h"
#include "ogda/learner.h"
#include "ogda/metrics.h"

namespace ogda {

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "OGDA_OUTPUT_DIR";

struct GameSource {
  enum class Kind { kBuiltin, kFile, kGenerator };
  Kind kind = Kind::kBuiltin;
  std::string builtin = "mp1";
  std::string path;
  // Overrides the fixture/file discount factor when set.
  std::optional<double> gamma;
  // Generator parameters.
  uint64_t seed = 0;
  int num_states = 2;
  int num_actions_p1 = 2;
  int num_actions_p2 = 2;
  double kappa = 0.05;
};

struct ExperimentConfig {
  GameSource game;
  RunConfig run;
  RecorderOptions metrics;
  double ground_truth_tolerance = 1e-8;
  std::string output_dir;
  std::vector<uint64_t> seeds = {0};
};

// Experiment config file (JSON):
//   {
//     "game": {"builtin": "mp1", "gamma": 0.9}
//           | {"file": "games/g.game.json"}
//           | {"generator": {"seed": 1, "num_states": 3, "num_actions_p1": 2,
//                            "num_actions_p2": 2, "gamma": 0.9, "kappa": 0.05}},
//     "run": {"iterations": 1000, "eta": 0.05 | "auto", "alpha": "horizon",
//             "estimator": {"mode": "exact"}
//                        | {"mode": "sampled", "rollout_length": 1000,
//                           "epsilon": 0.1, "reset_each_iteration": false,
//                           "initial_state": 0},
//             "initial_policy": "uniform" | "random" | {"x": [[...]], "y": [[...]]},
//             "cadence": 10, "strict": false},
//     "metrics": {"gap_every_step": false, "estimator_error": false, "timing": false},
//     "ground_truth_tolerance": 1e-8,
//     "output_dir": "out",
//     "seeds": [1, 2, 3]
//   }
// Every field is optional. output_dir falls back to $OGDA_OUTPUT_DIR, then
// "ogda_out".
ExperimentConfig ParseExperimentConfig(const std::string& text);
std::string ExperimentConfigToJson(const ExperimentConfig& config);

// FNV-1a over the canonical JSON form with output_dir cleared.
std::string ConfigHash(const ExperimentConfig& config);

struct ResolvedGame {
  MarkovGame game;
  GeneratorInfo info;
};
ResolvedGame ResolveGame(const GameSource& source);

// Parses "builtin:<name>" or a path.
GameSource GameSourceFromString(const std::string& spec);

struct ExperimentResult {
  std::vector<std::string> run_files;
  std::string aggregate_file;
  std::vector<CsvTable> runs;
  CsvTable aggregate;
};

// Solves the ground truth once, then runs one self-play repetition per seed on
// a worker pool. Writes <output_dir>/run_seed<k>.csv per repetition and
// <output_dir>/aggregate.csv after all repetitions finish.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Single-player runs against the stationary `opponent`; writes
// <output_dir>/rational_seed<k>.csv and aggregate.csv.
ExperimentResult RunRationalExperiment(const ExperimentConfig& config, const Policy& opponent);

}  // namespace ogda

#endif  // OGDA_EXPERIMENT_H_
