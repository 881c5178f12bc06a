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

#ifndef OGDA_GAME_IO_H_
#define OGDA_GAME_IO_H_

#include <cstdint>
#include <optional>
#include <string>

#include "ogda/game.h"
#include "ogda/ground_truth.h"
#include "ogda/types.h"

namespace ogda {

inline constexpr int kGameSchemaVersion = 1;

// Provenance recorded alongside a game.
struct GeneratorInfo {
  std::string family = "custom";
  std::optional<uint64_t> seed;
  std::optional<double> kappa;

  bool operator==(const GeneratorInfo& other) const = default;
};

struct GameSpecFile {
  MarkovGame game;
  GeneratorInfo generator;
};

// Game file format (JSON text, numbers with 17 significant digits):
//   {
//     "schema": "ogda-game", "version": 1,
//     "num_states": S, "num_actions_p1": A, "num_actions_p2": B,
//     "gamma": γ,
//     "loss": [σ(s,a,b) flattened s-major],
//     "transition": [p(s'|s,a,b) flattened s-major, s' fastest],
//     "generator": {"family": "...", "seed": n, "kappa": κ}
//   }
std::string GameToText(const MarkovGame& game, const GeneratorInfo& generator = {});

// Parses and validates. Throws Error naming the offending field.
GameSpecFile ParseGame(const std::string& text);

void SaveGame(const MarkovGame& game, const std::string& path,
              const GeneratorInfo& generator = {});
MarkovGame LoadGame(const std::string& path);
GameSpecFile LoadGameSpec(const std::string& path);

// {"x": [[...], ...]} / {"y": [[...], ...]} policy files; either key may be
// absent when only one side is needed.
std::string PolicyToText(const JointPolicy& policy);
Policy LoadPolicySide(const std::string& path, const std::string& key);

// Solution sidecar written by `solve`.
std::string GroundTruthToText(const GroundTruth& truth);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

// 17 significant digits, which reads back to exactly `v`.
std::string FormatDouble(double v);

}  // namespace ogda

#endif  // OGDA_GAME_IO_H_
