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

#ifndef OGDA_GAME_H_
#define OGDA_GAME_H_

#include <span>
#include <string>
#include <vector>

#include "ogda/types.h"

namespace ogda {

// A finite two-player zero-sum discounted Markov game. Player 1 (rows, actions
// A) pays loss(s, a, b) to Player 2 (columns, actions B). Action counts are the
// same on every state.
//
// Tensors are stored flat: loss as [s][a][b], transition as [s][a][b][s'].
// The constructor only checks tensor sizes; use ValidateGame for the model
// constraints.
class MarkovGame {
 public:
  MarkovGame() = default;
  MarkovGame(int num_states, int num_actions_p1, int num_actions_p2, double gamma,
             std::vector<double> loss, std::vector<double> transition);

  int num_states() const { return num_states_; }
  int num_actions_p1() const { return num_actions_p1_; }
  int num_actions_p2() const { return num_actions_p2_; }
  double gamma() const { return gamma_; }

  double loss(int s, int a, int b) const { return loss_[LossIndex(s, a, b)]; }
  std::span<const double> transition(int s, int a, int b) const {
    return {transition_.data() + LossIndex(s, a, b) * num_states_,
            static_cast<size_t>(num_states_)};
  }

  const std::vector<double>& loss_data() const { return loss_; }
  const std::vector<double>& transition_data() const { return transition_; }

  // Stage matrix σ(s, ·, ·).
  Matrix LossMatrix(int s) const;

  // Returns a copy with a different discount factor.
  MarkovGame WithGamma(double gamma) const;

  bool operator==(const MarkovGame& other) const = default;

 private:
  size_t LossIndex(int s, int a, int b) const {
    return (static_cast<size_t>(s) * num_actions_p1_ + a) * num_actions_p2_ + b;
  }

  int num_states_ = 0;
  int num_actions_p1_ = 0;
  int num_actions_p2_ = 0;
  double gamma_ = 0.0;
  std::vector<double> loss_;
  std::vector<double> transition_;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

// Checks σ ∈ [0,1], rows of p nonnegative and summing to 1 within 1e-12, and
// γ ∈ [1/2, 1). Never throws.
ValidationReport ValidateGame(const MarkovGame& game);

// Throws Error if `policy` does not match the game's dimensions or is not a
// distribution on every state.
void CheckJointPolicy(const MarkovGame& game, const JointPolicy& policy);

// V_{x,y}: solves (I − γ P_{x,y}) V = σ_{x,y} by dense LU.
ValueVector EvaluatePolicyPair(const MarkovGame& game, const JointPolicy& policy);

// Q^s(a,b) = σ(s,a,b) + γ Σ_{s'} p(s'|s,a,b) V^{s'}.
QTable QFromV(const MarkovGame& game, const ValueVector& values);

enum class Player { kOne, kTwo };

struct BestResponseOptions {
  // Value-iteration stopping tolerance on ‖V − V*‖_∞.
  double tolerance = 1e-9;
  int max_iterations = 1'000'000;
};

struct BestResponseResult {
  // Optimal value of the induced single-player MDP.
  ValueVector value;
  // One deterministic stationary optimal policy of the responding player.
  Policy policy;
};

// Best response against the stationary policy of `fixed_player`. If Player 2
// is fixed, Player 1 minimizes; if Player 1 is fixed, Player 2 maximizes.
// Value iteration finds a near-optimal greedy policy, then policy iteration
// on the exact policy values finishes it.
BestResponseResult BestResponse(const MarkovGame& game, const Policy& fixed,
                                Player fixed_player,
                                const BestResponseOptions& options = {});

}  // namespace ogda

#endif  // OGDA_GAME_H_
