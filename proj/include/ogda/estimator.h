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

#ifndef OGDA_ESTIMATOR_H_
#define OGDA_ESTIMATOR_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ogda/estimate.h"
#include "ogda/game.h"
#include "ogda/learner.h"
#include "ogda/rng.h"
#include "ogda/types.h"

namespace ogda {

// ell^s = Q^s y^s, r^s = Q^{sT} x^s, rho^s = Σ_a x^s_a ell^s_a.
EstimateTriple ExactEstimates(const QTable& q, const JointPolicy& policy);
// Same with Q = QFromV(game, v_prev).
EstimateTriple ExactEstimates(const MarkovGame& game, const ValueVector& v_prev,
                              const JointPolicy& policy);

// x̃^s(a) = (1 − ε'/2) x^s(a) + ε'/(2|A|).
Policy ExploreMix(const Policy& policy, double epsilon_prime);

struct Transition {
  int state = 0;
  int action_p1 = 0;
  int action_p2 = 0;
  double loss = 0.0;
  int next_state = 0;
};

struct Trajectory {
  std::vector<Transition> steps;
  uint64_t seed = 0;
};

// L steps of joint play from `initial_state`: a ∼ x̃^s, b ∼ ỹ^s, s' ∼ p.
Trajectory Rollout(const MarkovGame& game, const Policy& x_tilde, const Policy& y_tilde,
                   int length, int initial_state, Rng& rng, uint64_t seed_tag = 0);
Trajectory Rollout(const MarkovGame& game, const Policy& x_tilde, const Policy& y_tilde,
                   int length, int initial_state, uint64_t seed);

// Visit-average estimators: ell^s(a) averages loss_i + γV^{s_{i+1}} over the
// steps with (s_i, a_i) = (s, a); r and rho are analogous over (s, b) and s.
// Entries whose visit count is zero are 0.
EstimateTriple SampledEstimates(const MarkovGame& game, const Trajectory& trajectory,
                                const ValueVector& v_prev);

class ExactEstimator : public Estimator {
 public:
  EstimateTriple Estimate(const MarkovGame& game, const QTable& q, const ValueVector& v_prev,
                          const JointPolicy& policy) override;
  double epsilon() const override { return 0.0; }
};

// Both players explore with rate ε' = (1−γ)ε and interact for L steps per
// iteration. By default each rollout starts where the previous one ended.
class SampledEstimator : public Estimator {
 public:
  SampledEstimator(const EstimatorConfig& config, double gamma, uint64_t seed);

  EstimateTriple Estimate(const MarkovGame& game, const QTable& q, const ValueVector& v_prev,
                          const JointPolicy& policy) override;
  double epsilon() const override { return config_.epsilon; }

  double epsilon_prime() const { return epsilon_prime_; }
  const Trajectory& last_trajectory() const { return last_; }

 private:
  EstimatorConfig config_;
  double epsilon_prime_;
  uint64_t seed_;
  Rng rng_;
  int current_state_;
  Trajectory last_;
};

// Sampling for the single-player mode: Player 1 explores, Player 2 plays the
// fixed `opponent`, and rollouts run in the original game. Meant to be handed
// to RunSinglePlayer; the reduced game it is called with only fixes shapes.
class FixedOpponentSampler : public Estimator {
 public:
  FixedOpponentSampler(MarkovGame game, Policy opponent, const EstimatorConfig& config,
                       uint64_t seed);

  EstimateTriple Estimate(const MarkovGame& reduced, const QTable& q, const ValueVector& v_prev,
                          const JointPolicy& policy) override;
  double epsilon() const override { return config_.epsilon; }

 private:
  MarkovGame game_;
  Policy opponent_;
  EstimatorConfig config_;
  double epsilon_prime_;
  uint64_t seed_;
  Rng rng_;
  int current_state_;
};

std::unique_ptr<Estimator> MakeEstimator(const EstimatorConfig& config, double gamma,
                                         uint64_t seed);

struct SampleBudget {
  int num_actions_p1 = 0;
  int num_actions_p2 = 0;
  double gamma = 0.0;
  double mu = 0.0;
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
  double iterations = 0.0;
  double delta = 0.0;
  double c_l = 1.0;
  // Rollout length, ceil(c_L (|A|³+|B|³) / ((1−γ) μ ε³) · log²(T/δ)).
  double rollout_length = 0.0;
};

SampleBudget PlanSampleBudget(int num_actions_p1, int num_actions_p2, double gamma, double mu,
                              double epsilon, double iterations, double delta, double c_l = 1.0);

enum class BudgetMode { kAverageGap, kLastIterate };

struct AccuracyBudget {
  BudgetMode mode = BudgetMode::kAverageGap;
  double xi = 0.0;
  int num_states = 0;
  int num_actions_p1 = 0;
  int num_actions_p2 = 0;
  double gamma = 0.0;
  double eta = 0.0;
  std::optional<double> c_hat;
  double c_t = 1.0;
  // Iteration count without the hidden logarithmic factor.
  double iterations = 0.0;
  // ln(iterations), the factor hidden in the average-gap bound; 1 in
  // last-iterate mode.
  double log_factor = 1.0;
  // Estimator accuracy that balances the error term against ξ, capped at
  // 1/(1−γ).
  double epsilon = 0.0;
};

// Average-gap mode: T = c_T |S|²/(η²(1−γ)⁴ξ²), ε = ξ²η(1−γ)⁴/|S|².
// Last-iterate mode: T = c_T |S|²/(η⁴C⁴(1−γ)⁴ξ), ε = ξηC²(1−γ)³.
AccuracyBudget PlanAccuracyBudget(double xi, BudgetMode mode, int num_states, int num_actions_p1,
                                  int num_actions_p2, double gamma, double eta,
                                  std::optional<double> c_hat, double c_t = 1.0);

// Heuristic irreducibility constant: the reciprocal of the largest expected
// first-passage time s → s' (s ≠ s') over the uniform policy pair and
// `num_probes` − 1 random stationary pairs. Hitting times come from exact
// linear solves. Returns 1 for single-state games.
double EstimateMu(const MarkovGame& game, int num_probes, uint64_t seed);

// Expected first-passage times T^{s→s'} of the row-stochastic chain `chain`
// (diagonal left at 0). Throws if some state cannot be reached.
Matrix HittingTimes(const Matrix& chain);

// Chain induced on states by a policy pair.
Matrix InducedChain(const MarkovGame& game, const JointPolicy& policy);

}  // namespace ogda

#endif  // OGDA_ESTIMATOR_H_
