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

#include "ogda/learner.h"

#include <cmath>

#include <fmt/format.h>

#include "ogda/rng.h"
#include "ogda/simplex_projection.h"

namespace ogda {
namespace {

// Π(base + sign·η·grad) for every state, written into `out`.
void ProjectedStep(const Policy& base, const std::vector<std::vector<double>>& grad, double eta,
                   double sign, Policy& out) {
  std::vector<double> buffer(base.num_actions());
  for (int s = 0; s < base.num_states(); ++s) {
    auto b = base[s];
    for (int a = 0; a < base.num_actions(); ++a) buffer[a] = b[a] + sign * eta * grad[s][a];
    const std::vector<double> projected = ProjectSimplex(buffer);
    std::copy(projected.begin(), projected.end(), out[s].begin());
  }
}

void CheckFinite(const std::vector<std::vector<double>>& rows, int num_states, int num_actions,
                 const char* name) {
  if (static_cast<int>(rows.size()) != num_states) {
    throw Error(fmt::format("estimate {} has {} states, expected {}", name, rows.size(),
                            num_states));
  }
  for (int s = 0; s < num_states; ++s) {
    if (static_cast<int>(rows[s].size()) != num_actions) {
      throw Error(fmt::format("estimate {}[{}] has {} entries, expected {}", name, s,
                              rows[s].size(), num_actions));
    }
    for (double v : rows[s]) {
      if (!std::isfinite(v)) throw Error(fmt::format("estimate {}[{}] is not finite", name, s));
    }
  }
}

void CheckRho(const std::vector<double>& rho, int num_states) {
  if (static_cast<int>(rho.size()) != num_states) {
    throw Error(fmt::format("estimate rho has {} states, expected {}", rho.size(), num_states));
  }
  for (double v : rho) {
    if (!std::isfinite(v)) throw Error("estimate rho is not finite");
  }
}

Policy RandomPolicy(int num_states, int num_actions, Rng& rng) {
  std::vector<double> probs;
  for (int s = 0; s < num_states; ++s) {
    const auto p = rng.SimplexPoint(num_actions);
    probs.insert(probs.end(), p.begin(), p.end());
  }
  return Policy(num_states, num_actions, std::move(probs));
}

}  // namespace

AlphaKind ParseAlphaKind(const std::string& name) {
  if (name == "horizon") return AlphaKind::kHorizon;
  if (name == "harmonic") return AlphaKind::kHarmonic;
  throw Error(fmt::format("unknown alpha schedule '{}' (expected horizon|harmonic)", name));
}

std::string AlphaKindName(AlphaKind kind) {
  return kind == AlphaKind::kHorizon ? "horizon" : "harmonic";
}

double AlphaSchedule(int t, double gamma) {
  if (t < 1) throw Error("AlphaSchedule: t must be ≥ 1");
  const double h = 2.0 / (1.0 - gamma);
  return (h + 1.0) / (h + t);
}

double Alpha(AlphaKind kind, int t, double gamma) {
  if (kind == AlphaKind::kHarmonic) {
    if (t < 1) throw Error("Alpha: t must be ≥ 1");
    return 1.0 / t;
  }
  return AlphaSchedule(t, gamma);
}

double EtaMax(double gamma, int num_states) {
  return 1e-4 * std::sqrt(std::pow(1.0 - gamma, 5) / num_states);
}

double ResolveStepSize(const MarkovGame& game, const RunConfig& config) {
  if (config.iterations < 1) throw Error("RunConfig: iterations must be ≥ 1");
  if (config.cadence < 1) throw Error("RunConfig: cadence must be ≥ 1");
  const double eta_max = EtaMax(game.gamma(), game.num_states());
  const double eta = config.eta.value_or(eta_max);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(fmt::format("RunConfig: eta must be positive, got {}", eta));
  }
  if (config.strict) {
    if (game.gamma() < 0.5) {
      throw Error(fmt::format("strict mode: gamma {} below 1/2", game.gamma()));
    }
    if (eta > eta_max) {
      throw Error(fmt::format("strict mode: eta {} exceeds eta_max {:.6e}", eta, eta_max));
    }
  }
  return eta;
}

LearnerState InitialState(const MarkovGame& game, const RunConfig& config, double eta) {
  const int S = game.num_states();
  LearnerState state;
  switch (config.init) {
    case InitKind::kUniform:
      state.x_hat = Policy(S, game.num_actions_p1());
      state.y_hat = Policy(S, game.num_actions_p2());
      break;
    case InitKind::kExplicit:
      CheckJointPolicy(game, config.initial_policy);
      state.x_hat = config.initial_policy.x;
      state.y_hat = config.initial_policy.y;
      break;
    case InitKind::kRandom: {
      Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
      state.x_hat = RandomPolicy(S, game.num_actions_p1(), rng);
      state.y_hat = RandomPolicy(S, game.num_actions_p2(), rng);
      break;
    }
  }
  state.x = state.x_hat;
  state.y = state.y_hat;
  state.values = config.frozen_critic.value_or(ValueVector(S, 0.0));
  state.t = 1;
  state.eta = eta;
  return state;
}

LearnerState OgdaStep(const LearnerState& state, const EstimateTriple& estimate) {
  const int S = state.x_hat.num_states();
  CheckFinite(estimate.ell, S, state.x_hat.num_actions(), "ell");
  CheckFinite(estimate.r, S, state.y_hat.num_actions(), "r");
  LearnerState next = state;
  ProjectedStep(state.x_hat, estimate.ell, state.eta, -1.0, next.x_hat);
  ProjectedStep(next.x_hat, estimate.ell, state.eta, -1.0, next.x);
  ProjectedStep(state.y_hat, estimate.r, state.eta, +1.0, next.y_hat);
  ProjectedStep(next.y_hat, estimate.r, state.eta, +1.0, next.y);
  next.t = state.t + 1;
  return next;
}

ValueVector CriticStep(const ValueVector& previous, const std::vector<double>& rho, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(fmt::format("CriticStep: alpha {} outside (0,1]", alpha));
  }
  if (rho.size() != previous.size()) throw Error("CriticStep: size mismatch");
  ValueVector next(previous.size());
  for (size_t s = 0; s < previous.size(); ++s) {
    next[s] = previous[s] + alpha * (rho[s] - previous[s]);
  }
  return next;
}

LearnerState RunSelfPlay(const MarkovGame& game, const RunConfig& config, Estimator& estimator,
                         IterationObserver* observer) {
  const double eta = ResolveStepSize(game, config);
  LearnerState state = InitialState(game, config, eta);
  state.epsilon = estimator.epsilon();
  for (int t = 1; t <= config.iterations; ++t) {
    try {
      const QTable q = QFromV(game, state.values);
      const EstimateTriple estimate = estimator.Estimate(game, q, state.values, state.Current());
      CheckRho(estimate.rho, game.num_states());
      const double alpha = Alpha(config.alpha, t, game.gamma());
      if (observer != nullptr) observer->Observe({t, state, q, alpha, estimate});
      ValueVector values = config.frozen_critic ? state.values
                                                : CriticStep(state.values, estimate.rho, alpha);
      state = OgdaStep(state, estimate);
      state.values = std::move(values);
    } catch (const Error& e) {
      throw Error(fmt::format("iteration {}: {}", t, e.what()));
    }
  }
  return state;
}

MarkovGame ReduceGameForOpponent(const MarkovGame& game, const Policy& opponent) {
  if (opponent.num_states() != game.num_states() ||
      opponent.num_actions() != game.num_actions_p2()) {
    throw Error("ReduceGameForOpponent: opponent policy shape does not match the game");
  }
  if (auto msg = CheckDistribution(opponent); !msg.empty()) {
    throw Error("ReduceGameForOpponent: " + msg);
  }
  const int S = game.num_states();
  const int A = game.num_actions_p1();
  std::vector<double> loss(static_cast<size_t>(S) * A, 0.0);
  std::vector<double> transition(static_cast<size_t>(S) * A * S, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      double* row = transition.data() + (static_cast<size_t>(s) * A + a) * S;
      for (int b = 0; b < game.num_actions_p2(); ++b) {
        const double w = opponent[s][b];
        loss[static_cast<size_t>(s) * A + a] += w * game.loss(s, a, b);
        auto p = game.transition(s, a, b);
        for (int sp = 0; sp < S; ++sp) row[sp] += w * p[sp];
      }
    }
  }
  return MarkovGame(S, A, 1, game.gamma(), std::move(loss), std::move(transition));
}

LearnerState RunSinglePlayer(const MarkovGame& game, const Policy& opponent,
                             const RunConfig& config, Estimator& estimator,
                             IterationObserver* observer) {
  const MarkovGame reduced = ReduceGameForOpponent(game, opponent);
  const double eta = ResolveStepSize(reduced, config);
  RunConfig reduced_config = config;
  if (config.init == InitKind::kExplicit) {
    reduced_config.initial_policy.y = Policy(game.num_states(), 1);
  }
  LearnerState state = InitialState(reduced, reduced_config, eta);
  state.epsilon = estimator.epsilon();
  const int S = reduced.num_states();
  for (int t = 1; t <= config.iterations; ++t) {
    try {
      const QTable q = QFromV(reduced, state.values);
      const EstimateTriple estimate =
          estimator.Estimate(reduced, q, state.values, state.Current());
      CheckFinite(estimate.ell, S, reduced.num_actions_p1(), "ell");
      CheckRho(estimate.rho, S);
      const double alpha = Alpha(config.alpha, t, reduced.gamma());
      if (observer != nullptr) observer->Observe({t, state, q, alpha, estimate});
      LearnerState next = state;
      ProjectedStep(state.x_hat, estimate.ell, state.eta, -1.0, next.x_hat);
      ProjectedStep(next.x_hat, estimate.ell, state.eta, -1.0, next.x);
      if (!config.frozen_critic) next.values = CriticStep(state.values, estimate.rho, alpha);
      next.t = state.t + 1;
      state = std::move(next);
    } catch (const Error& e) {
      throw Error(fmt::format("iteration {}: {}", t, e.what()));
    }
  }
  return state;
}

}  // namespace ogda
