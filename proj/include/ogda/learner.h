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

#ifndef OGDA_LEARNER_H_
#define OGDA_LEARNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ogda/estimate.h"
#include "ogda/game.h"
#include "ogda/types.h"

namespace ogda {

// Iterates of the self-play learner. At iteration t the policies hold
// (x̂_t, x_t, ŷ_t, y_t) and `values` holds the critic V_{t−1}.
struct LearnerState {
  Policy x_hat;
  Policy x;
  Policy y_hat;
  Policy y;
  ValueVector values;
  int t = 1;
  double eta = 0.0;
  double epsilon = 0.0;

  JointPolicy Hat() const { return {x_hat, y_hat}; }
  JointPolicy Current() const { return {x, y}; }

  bool operator==(const LearnerState& other) const = default;
};

enum class AlphaKind {
  // (H+1)/(H+t) with H = 2/(1−γ).
  kHorizon,
  // 1/t.
  kHarmonic,
};

AlphaKind ParseAlphaKind(const std::string& name);
std::string AlphaKindName(AlphaKind kind);

// α_t = (H+1)/(H+t), H = 2/(1−γ). α_1 = 1.
double AlphaSchedule(int t, double gamma);
double Alpha(AlphaKind kind, int t, double gamma);

// Largest step size covered by the convergence analysis:
// 10⁻⁴·√((1−γ)⁵/S).
double EtaMax(double gamma, int num_states);

enum class EstimatorMode { kExact, kSampled };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::kExact;
  // Rollout length L per iteration (sampled mode).
  int rollout_length = 1000;
  // Target accuracy ε; exploration rate is ε' = (1−γ)ε.
  double epsilon = 0.1;
  // Start every rollout from `initial_state` instead of continuing from where
  // the previous one ended.
  bool reset_each_iteration = false;
  int initial_state = 0;
};

enum class InitKind { kUniform, kExplicit, kRandom };

struct RunConfig {
  int iterations = 1000;
  // nullopt means "auto": use EtaMax.
  std::optional<double> eta;
  AlphaKind alpha = AlphaKind::kHorizon;
  EstimatorConfig estimator;
  uint64_t seed = 0;
  InitKind init = InitKind::kUniform;
  // Used when init == kExplicit.
  JointPolicy initial_policy;
  int cadence = 1;
  // Enforce η ≤ EtaMax(γ, S) and γ ≥ 1/2.
  bool strict = false;
  // Test hook: hold the critic at these values instead of learning it.
  std::optional<ValueVector> frozen_critic;
};

// Checks RunConfig invariants against a game and returns the step size to
// use. Throws Error on violations.
double ResolveStepSize(const MarkovGame& game, const RunConfig& config);

// Initial learner state: x̂_1 = x_1, ŷ_1 = y_1 per config.init, V_0 = 0.
LearnerState InitialState(const MarkovGame& game, const RunConfig& config, double eta);

// One optimistic step per state:
//   x̂' = Π(x̂ − ηℓ),  x' = Π(x̂' − ηℓ),  ŷ' = Π(ŷ + ηr),  y' = Π(ŷ' + ηr).
// The critic is left untouched and t is incremented. Throws on non-finite
// estimates.
LearnerState OgdaStep(const LearnerState& state, const EstimateTriple& estimate);

// V_t = (1−α)V_{t−1} + αρ.
ValueVector CriticStep(const ValueVector& previous, const std::vector<double>& rho, double alpha);

// Everything an observer can see at iteration t, before the update.
struct IterationView {
  int t = 0;
  const LearnerState& state;
  const QTable& q;
  double alpha = 0.0;
  const EstimateTriple& estimate;
};

class IterationObserver {
 public:
  virtual ~IterationObserver() = default;
  virtual void Observe(const IterationView& view) = 0;
};

// Self-play OGDA with a slow critic. Each iteration builds Q_t from V_{t−1},
// queries the estimator on (x_t, y_t), notifies the observer, applies
// OgdaStep and then the critic update. Returns the state after T iterations.
LearnerState RunSelfPlay(const MarkovGame& game, const RunConfig& config, Estimator& estimator,
                         IterationObserver* observer = nullptr);

// The game Player 1 faces when Player 2 is fixed to `opponent`: one opponent
// action with σ(s,a,1) = E_{b∼y^s} σ(s,a,b) and p(·|s,a,1) = E_{b∼y^s} p(·|s,a,b).
MarkovGame ReduceGameForOpponent(const MarkovGame& game, const Policy& opponent);

// Player 1 runs the x̂/x updates and the critic alone while Player 2 plays the
// stationary policy `opponent`. The returned state (and every observed view)
// is expressed over the reduced game, so y_hat and y are the one-action
// policy. The estimator is queried with the reduced game and Q̲_t; only ell
// and rho are used.
LearnerState RunSinglePlayer(const MarkovGame& game, const Policy& opponent,
                             const RunConfig& config, Estimator& estimator,
                             IterationObserver* observer = nullptr);

}  // namespace ogda

#endif  // OGDA_LEARNER_H_
