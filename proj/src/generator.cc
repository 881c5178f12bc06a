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

#include "ogda/generator.h"

#include <fmt/format.h>

#include "ogda/rng.h"

namespace ogda {

MarkovGame RandomGame(uint64_t seed, int num_states, int num_actions_p1, int num_actions_p2,
                      double gamma, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(fmt::format("RandomGame: kappa {} outside (0,1]", kappa));
  }
  if (num_states < 1 || num_actions_p1 < 1 || num_actions_p2 < 1) {
    throw Error("RandomGame: dimensions must be ≥ 1");
  }
  Rng rng(seed);
  const size_t n = static_cast<size_t>(num_states) * num_actions_p1 * num_actions_p2;
  std::vector<double> loss(n);
  for (double& l : loss) l = rng.Uniform();
  std::vector<double> transition;
  transition.reserve(n * num_states);
  const double uniform = kappa / num_states;
  for (size_t i = 0; i < n; ++i) {
    const std::vector<double> raw = rng.SimplexPoint(num_states);
    for (double p : raw) transition.push_back((1.0 - kappa) * p + uniform);
  }
  return MarkovGame(num_states, num_actions_p1, num_actions_p2, gamma, std::move(loss),
                    std::move(transition));
}

std::vector<std::string> BuiltinNames() { return {"mp1", "const", "chain2", "switching-mp"}; }

MarkovGame Builtin(const std::string& name, std::optional<double> gamma) {
  if (name == "mp1") {
    return MarkovGame(1, 2, 2, gamma.value_or(0.9), {1.0, 0.0, 0.0, 1.0}, {1.0, 1.0, 1.0, 1.0});
  }
  if (name == "const") {
    return MarkovGame(1, 1, 1, gamma.value_or(0.5), {0.4}, {1.0});
  }
  if (name == "chain2") {
    return MarkovGame(2, 1, 1, gamma.value_or(0.5), {1.0, 0.0}, {0.0, 1.0, 0.0, 1.0});
  }
  if (name == "switching-mp") {
    constexpr double kKappa = 0.1;
    const std::vector<double> loss = {1.0, 0.0, 0.0, 1.0,   // state 0
                                      0.5, 0.0, 0.0, 1.0};  // state 1
    std::vector<double> transition;
    for (int s = 0; s < 2; ++s) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const int next = a == b ? 1 - s : s;
          for (int sp = 0; sp < 2; ++sp) {
            transition.push_back((1.0 - kKappa) * (sp == next ? 1.0 : 0.0) + kKappa / 2.0);
          }
        }
      }
    }
    return MarkovGame(2, 2, 2, gamma.value_or(0.9), loss, std::move(transition));
  }
  throw Error(fmt::format("unknown builtin game '{}'", name));
}

}  // namespace ogda
