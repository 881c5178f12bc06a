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

#ifndef OGDA_GENERATOR_H_
#define OGDA_GENERATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ogda/game.h"

namespace ogda {

// Losses i.i.d. uniform on [0,1]; transitions (1−κ)·Dirichlet(1) + κ·uniform,
// so every stationary policy pair induces an irreducible chain when κ > 0.
MarkovGame RandomGame(uint64_t seed, int num_states, int num_actions_p1, int num_actions_p2,
                      double gamma, double kappa = 0.05);

// Canonical fixtures:
//   mp1           1-state matching pennies, σ = [[1,0],[0,1]] (default γ 0.9)
//   const         1-state 1×1 game with σ = 0.4 (default γ 0.5)
//   chain2        2-state 1×1 chain: state 0 pays 1 and moves to state 1,
//                 state 1 pays 0 and stays (default γ 0.5)
//   switching-mp  2 states with matching-pennies stage games
//                 σ⁰ = [[1,0],[0,1]], σ¹ = [[0.5,0],[0,1]]. When Player 1
//                 loses (actions match) the state switches, otherwise it
//                 stays; mixed with κ = 0.1 uniform (default γ 0.9)
MarkovGame Builtin(const std::string& name, std::optional<double> gamma = std::nullopt);

std::vector<std::string> BuiltinNames();

}  // namespace ogda

#endif  // OGDA_GENERATOR_H_
