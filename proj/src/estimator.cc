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

#include "ogda/estimator.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace ogda {

EstimateTriple ExactEstimates(const QTable& q, const JointPolicy& policy) {
  const int S = static_cast<int>(q.size());
  EstimateTriple est;
  est.ell.resize(S);
  est.r.resize(S);
  est.rho.resize(S);
  for (int s = 0; s < S; ++s) {
    const Matrix& m = q[s];
    auto x = policy.x[s];
    auto y = policy.y[s];
    est.ell[s].assign(m.rows(), 0.0);
    est.r[s].assign(m.cols(), 0.0);
    for (int a = 0; a < m.rows(); ++a) {
      double v = 0.0;
      for (int b = 0; b < m.cols(); ++b) v += m(a, b) * y[b];
      est.ell[s][a] = v;
    }
    for (int b = 0; b < m.cols(); ++b) {
      double v = 0.0;
      for (int a = 0; a < m.rows(); ++a) v += m(a, b) * x[a];
      est.r[s][b] = v;
    }
    double rho = 0.0;
    for (int a = 0; a < m.rows(); ++a) rho += x[a] * est.ell[s][a];
    est.rho[s] = rho;
  }
  return est;
}

EstimateTriple ExactEstimates(const MarkovGame& game, const ValueVector& v_prev,
                              const JointPolicy& policy) {
  CheckJointPolicy(game, policy);
  return ExactEstimates(QFromV(game, v_prev), policy);
}

Policy ExploreMix(const Policy& policy, double epsilon_prime) {
  if (!(epsilon_prime >= 0.0 && epsilon_prime <= 1.0)) {
    throw Error(fmt::format("ExploreMix: epsilon' {} outside [0,1]", epsilon_prime));
  }
  const int n = policy.num_actions();
  Policy mixed = policy;
  const double keep = 1.0 - epsilon_prime / 2.0;
  const double floor = epsilon_prime / (2.0 * n);
  for (int s = 0; s < policy.num_states(); ++s) {
    for (int a = 0; a < n; ++a) mixed[s][a] = keep * policy[s][a] + floor;
  }
  return mixed;
}

Trajectory Rollout(const MarkovGame& game, const Policy& x_tilde, const Policy& y_tilde,
                   int length, int initial_state, Rng& rng, uint64_t seed_tag) {
  if (length < 1) throw Error("Rollout: length must be ≥ 1");
  if (initial_state < 0 || initial_state >= game.num_states()) {
    throw Error(fmt::format("Rollout: initial state {} out of range", initial_state));
  }
  Trajectory traj;
  traj.seed = seed_tag;
  traj.steps.reserve(length);
  int s = initial_state;
  for (int i = 0; i < length; ++i) {
    Transition step;
    step.state = s;
    step.action_p1 = rng.Categorical(x_tilde[s]);
    step.action_p2 = rng.Categorical(y_tilde[s]);
    step.loss = game.loss(s, step.action_p1, step.action_p2);
    step.next_state = rng.Categorical(game.transition(s, step.action_p1, step.action_p2));
    traj.steps.push_back(step);
    s = step.next_state;
  }
  return traj;
}

Trajectory Rollout(const MarkovGame& game, const Policy& x_tilde, const Policy& y_tilde,
                   int length, int initial_state, uint64_t seed) {
  Rng rng(seed);
  return Rollout(game, x_tilde, y_tilde, length, initial_state, rng, seed);
}

EstimateTriple SampledEstimates(const MarkovGame& game, const Trajectory& trajectory,
                                const ValueVector& v_prev) {
  const int S = game.num_states();
  const int A = game.num_actions_p1();
  const int B = game.num_actions_p2();
  const double gamma = game.gamma();
  std::vector<std::vector<double>> ell_sum(S, std::vector<double>(A, 0.0));
  std::vector<std::vector<double>> r_sum(S, std::vector<double>(B, 0.0));
  std::vector<std::vector<long>> ell_count(S, std::vector<long>(A, 0));
  std::vector<std::vector<long>> r_count(S, std::vector<long>(B, 0));
  std::vector<double> rho_sum(S, 0.0);
  std::vector<long> rho_count(S, 0);
  for (const Transition& step : trajectory.steps) {
    const double target = step.loss + gamma * v_prev[step.next_state];
    ell_sum[step.state][step.action_p1] += target;
    ++ell_count[step.state][step.action_p1];
    r_sum[step.state][step.action_p2] += target;
    ++r_count[step.state][step.action_p2];
    rho_sum[step.state] += target;
    ++rho_count[step.state];
  }
  EstimateTriple est;
  est.ell.assign(S, std::vector<double>(A, 0.0));
  est.r.assign(S, std::vector<double>(B, 0.0));
  est.rho.assign(S, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      if (ell_count[s][a] > 0) est.ell[s][a] = ell_sum[s][a] / ell_count[s][a];
    }
    for (int b = 0; b < B; ++b) {
      if (r_count[s][b] > 0) est.r[s][b] = r_sum[s][b] / r_count[s][b];
    }
    if (rho_count[s] > 0) est.rho[s] = rho_sum[s] / rho_count[s];
  }
  return est;
}

EstimateTriple ExactEstimator::Estimate(const MarkovGame&, const QTable& q, const ValueVector&,
                                        const JointPolicy& policy) {
  return ExactEstimates(q, policy);
}

SampledEstimator::SampledEstimator(const EstimatorConfig& config, double gamma, uint64_t seed)
    : config_(config),
      epsilon_prime_((1.0 - gamma) * config.epsilon),
      seed_(seed),
      rng_(seed),
      current_state_(config.initial_state) {
  if (config.rollout_length < 1) throw Error("SampledEstimator: rollout length must be ≥ 1");
  if (!(config.epsilon > 0.0)) throw Error("SampledEstimator: epsilon must be positive");
}

EstimateTriple SampledEstimator::Estimate(const MarkovGame& game, const QTable&,
                                          const ValueVector& v_prev, const JointPolicy& policy) {
  const Policy x_tilde = ExploreMix(policy.x, epsilon_prime_);
  const Policy y_tilde = ExploreMix(policy.y, epsilon_prime_);
  const int start = config_.reset_each_iteration ? config_.initial_state : current_state_;
  last_ = Rollout(game, x_tilde, y_tilde, config_.rollout_length, start, rng_, seed_);
  current_state_ = last_.steps.back().next_state;
  return SampledEstimates(game, last_, v_prev);
}

FixedOpponentSampler::FixedOpponentSampler(MarkovGame game, Policy opponent,
                                           const EstimatorConfig& config, uint64_t seed)
    : game_(std::move(game)),
      opponent_(std::move(opponent)),
      config_(config),
      epsilon_prime_((1.0 - game_.gamma()) * config.epsilon),
      seed_(seed),
      rng_(seed),
      current_state_(config.initial_state) {
  if (config.rollout_length < 1) throw Error("FixedOpponentSampler: rollout length must be ≥ 1");
}

EstimateTriple FixedOpponentSampler::Estimate(const MarkovGame& reduced, const QTable&,
                                              const ValueVector& v_prev,
                                              const JointPolicy& policy) {
  if (reduced.num_states() != game_.num_states() ||
      reduced.num_actions_p1() != game_.num_actions_p1()) {
    throw Error("FixedOpponentSampler: reduced game does not match the original game");
  }
  const Policy x_tilde = ExploreMix(policy.x, epsilon_prime_);
  const int start = config_.reset_each_iteration ? config_.initial_state : current_state_;
  const Trajectory traj =
      Rollout(game_, x_tilde, opponent_, config_.rollout_length, start, rng_, seed_);
  current_state_ = traj.steps.back().next_state;
  EstimateTriple full = SampledEstimates(game_, traj, v_prev);
  EstimateTriple out;
  out.ell = std::move(full.ell);
  out.rho = full.rho;
  for (double rho : full.rho) out.r.push_back({rho});
  return out;
}

std::unique_ptr<Estimator> MakeEstimator(const EstimatorConfig& config, double gamma,
                                         uint64_t seed) {
  if (config.mode == EstimatorMode::kExact) return std::make_unique<ExactEstimator>();
  return std::make_unique<SampledEstimator>(config, gamma, seed);
}

SampleBudget PlanSampleBudget(int num_actions_p1, int num_actions_p2, double gamma, double mu,
                              double epsilon, double iterations, double delta, double c_l) {
  if (!(mu > 0.0)) throw Error("PlanSampleBudget: irreducibility constant required (mu > 0)");
  if (!(epsilon > 0.0 && epsilon <= 1.0 / (1.0 - gamma))) {
    throw Error(fmt::format("PlanSampleBudget: epsilon {} outside (0, 1/(1-gamma)]", epsilon));
  }
  if (!(iterations >= 1.0) || !(delta > 0.0 && delta < 1.0 * iterations)) {
    throw Error("PlanSampleBudget: need T ≥ 1 and 0 < delta < T");
  }
  SampleBudget b;
  b.num_actions_p1 = num_actions_p1;
  b.num_actions_p2 = num_actions_p2;
  b.gamma = gamma;
  b.mu = mu;
  b.epsilon = epsilon;
  b.epsilon_prime = (1.0 - gamma) * epsilon;
  b.iterations = iterations;
  b.delta = delta;
  b.c_l = c_l;
  const double a3 = std::pow(num_actions_p1, 3) + std::pow(num_actions_p2, 3);
  const double log_term = std::log(iterations / delta);
  const double raw = c_l * a3 / ((1.0 - gamma) * mu * std::pow(epsilon, 3)) * log_term * log_term;
  b.rollout_length = std::max(1.0, std::ceil(raw));
  return b;
}

AccuracyBudget PlanAccuracyBudget(double xi, BudgetMode mode, int num_states, int num_actions_p1,
                                  int num_actions_p2, double gamma, double eta,
                                  std::optional<double> c_hat, double c_t) {
  if (!(xi > 0.0)) throw Error("PlanAccuracyBudget: xi must be positive");
  if (!(eta > 0.0)) throw Error("PlanAccuracyBudget: eta must be positive");
  AccuracyBudget b;
  b.mode = mode;
  b.xi = xi;
  b.num_states = num_states;
  b.num_actions_p1 = num_actions_p1;
  b.num_actions_p2 = num_actions_p2;
  b.gamma = gamma;
  b.eta = eta;
  b.c_hat = c_hat;
  b.c_t = c_t;
  const double s2 = static_cast<double>(num_states) * num_states;
  const double horizon = 1.0 - gamma;
  if (mode == BudgetMode::kAverageGap) {
    b.iterations = std::ceil(c_t * s2 / (eta * eta * std::pow(horizon, 4) * xi * xi));
    b.log_factor = std::log(std::max(b.iterations, std::exp(1.0)));
    b.epsilon = xi * xi * eta * std::pow(horizon, 4) / s2;
  } else {
    if (!c_hat || !(*c_hat > 0.0)) {
      throw Error("PlanAccuracyBudget: last-iterate mode requires a positive C_hat");
    }
    const double c = *c_hat;
    b.iterations = std::ceil(c_t * s2 / (std::pow(eta, 4) * std::pow(c, 4) *
                                         std::pow(horizon, 4) * xi));
    b.log_factor = 1.0;
    b.epsilon = xi * eta * c * c * std::pow(horizon, 3);
  }
  b.epsilon = std::min(b.epsilon, 1.0 / horizon);
  return b;
}

Matrix InducedChain(const MarkovGame& game, const JointPolicy& policy) {
  CheckJointPolicy(game, policy);
  const int S = game.num_states();
  Matrix chain(S, S);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < game.num_actions_p1(); ++a) {
      for (int b = 0; b < game.num_actions_p2(); ++b) {
        const double w = policy.x[s][a] * policy.y[s][b];
        auto row = game.transition(s, a, b);
        for (int sp = 0; sp < S; ++sp) chain(s, sp) += w * row[sp];
      }
    }
  }
  return chain;
}

Matrix HittingTimes(const Matrix& chain) {
  const int S = chain.rows();
  Matrix times(S, S);
  if (S == 1) return times;
  for (int target = 0; target < S; ++target) {
    // h_s = 1 + Σ_{u ≠ target} P(s,u) h_u for s ≠ target.
    Eigen::MatrixXd system(S - 1, S - 1);
    for (int i = 0, si = 0; si < S; ++si) {
      if (si == target) continue;
      for (int j = 0, sj = 0; sj < S; ++sj) {
        if (sj == target) continue;
        system(i, j) = (i == j ? 1.0 : 0.0) - chain(si, sj);
        ++j;
      }
      ++i;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
      throw Error(fmt::format("HittingTimes: state {} unreachable (singular system)", target));
    }
    Eigen::VectorXd h = lu.solve(Eigen::VectorXd::Ones(S - 1));
    for (int i = 0, si = 0; si < S; ++si) {
      if (si == target) continue;
      if (!std::isfinite(h(i)) || h(i) < 1.0 - 1e-9) {
        throw Error(fmt::format("HittingTimes: state {} unreachable from {}", target, si));
      }
      times(si, target) = h(i);
      ++i;
    }
  }
  return times;
}

double EstimateMu(const MarkovGame& game, int num_probes, uint64_t seed) {
  if (game.num_states() == 1) return 1.0;
  if (num_probes < 1) throw Error("EstimateMu: need at least one probe");
  Rng rng(seed);
  double worst = 0.0;
  for (int probe = 0; probe < num_probes; ++probe) {
    JointPolicy pair{Policy(game.num_states(), game.num_actions_p1()),
                     Policy(game.num_states(), game.num_actions_p2())};
    if (probe > 0) {
      for (int s = 0; s < game.num_states(); ++s) {
        const auto x = rng.SimplexPoint(game.num_actions_p1());
        const auto y = rng.SimplexPoint(game.num_actions_p2());
        std::copy(x.begin(), x.end(), pair.x[s].begin());
        std::copy(y.begin(), y.end(), pair.y[s].begin());
      }
    }
    Matrix times;
    try {
      times = HittingTimes(InducedChain(game, pair));
    } catch (const Error& e) {
      throw Error(fmt::format("EstimateMu: probe {} ({}) gives a reducible chain: {}", probe,
                              probe == 0 ? "uniform pair" : "random pair", e.what()));
    }
    for (double t : times.data()) worst = std::max(worst, t);
  }
  return 1.0 / worst;
}

}  // namespace ogda
