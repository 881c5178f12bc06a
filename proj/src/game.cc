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

#include "ogda/game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ogda/types.h"

namespace ogda {
namespace {

// Single-player discounted MDP induced by fixing one side of a Markov game.
struct InducedMdp {
  int num_states = 0;
  int num_actions = 0;
  double gamma = 0.0;
  bool minimize = true;
  std::vector<double> cost;        // [s][a]
  std::vector<double> transition;  // [s][a][s']

  double Cost(int s, int a) const { return cost[static_cast<size_t>(s) * num_actions + a]; }
  const double* Row(int s, int a) const {
    return transition.data() + (static_cast<size_t>(s) * num_actions + a) * num_states;
  }
  double ActionValue(int s, int a, const ValueVector& w) const {
    const double* row = Row(s, a);
    double next = 0.0;
    for (int sp = 0; sp < num_states; ++sp) next += row[sp] * w[sp];
    return Cost(s, a) + gamma * next;
  }
  bool Better(double lhs, double rhs) const { return minimize ? lhs < rhs : lhs > rhs; }
};

InducedMdp Induce(const MarkovGame& game, const Policy& fixed, Player fixed_player) {
  const int S = game.num_states();
  const int A = game.num_actions_p1();
  const int B = game.num_actions_p2();
  InducedMdp mdp;
  mdp.num_states = S;
  mdp.gamma = game.gamma();
  mdp.minimize = fixed_player == Player::kTwo;
  mdp.num_actions = mdp.minimize ? A : B;
  const int n = mdp.num_actions;
  mdp.cost.assign(static_cast<size_t>(S) * n, 0.0);
  mdp.transition.assign(static_cast<size_t>(S) * n * S, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      for (int b = 0; b < B; ++b) {
        const int own = mdp.minimize ? a : b;
        const double w = mdp.minimize ? fixed[s][b] : fixed[s][a];
        mdp.cost[static_cast<size_t>(s) * n + own] += w * game.loss(s, a, b);
        auto row = game.transition(s, a, b);
        double* out = mdp.transition.data() + (static_cast<size_t>(s) * n + own) * S;
        for (int sp = 0; sp < S; ++sp) out[sp] += w * row[sp];
      }
    }
  }
  return mdp;
}

// Solves (I − γ P) v = c.
ValueVector SolveDiscountedChain(const std::vector<double>& cost, const Eigen::MatrixXd& chain,
                                 double gamma) {
  const int S = static_cast<int>(cost.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(S, S) - gamma * chain;
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(cost.data(), S);
  Eigen::VectorXd v = system.partialPivLu().solve(rhs);
  // One step of iterative refinement keeps the residual at rounding level.
  Eigen::VectorXd residual = rhs - system * v;
  v += system.partialPivLu().solve(residual);
  return ValueVector(v.data(), v.data() + S);
}

ValueVector EvaluateDeterministic(const InducedMdp& mdp, const std::vector<int>& policy) {
  const int S = mdp.num_states;
  Eigen::MatrixXd chain(S, S);
  std::vector<double> cost(S);
  for (int s = 0; s < S; ++s) {
    const double* row = mdp.Row(s, policy[s]);
    for (int sp = 0; sp < S; ++sp) chain(s, sp) = row[sp];
    cost[s] = mdp.Cost(s, policy[s]);
  }
  return SolveDiscountedChain(cost, chain, mdp.gamma);
}

}  // namespace

MarkovGame::MarkovGame(int num_states, int num_actions_p1, int num_actions_p2, double gamma,
                       std::vector<double> loss, std::vector<double> transition)
    : num_states_(num_states),
      num_actions_p1_(num_actions_p1),
      num_actions_p2_(num_actions_p2),
      gamma_(gamma),
      loss_(std::move(loss)),
      transition_(std::move(transition)) {
  if (num_states < 1 || num_actions_p1 < 1 || num_actions_p2 < 1) {
    throw Error(fmt::format("MarkovGame: dimensions must be positive, got S={} A={} B={}",
                            num_states, num_actions_p1, num_actions_p2));
  }
  const size_t n_loss = static_cast<size_t>(num_states) * num_actions_p1 * num_actions_p2;
  if (loss_.size() != n_loss) {
    throw Error(fmt::format("MarkovGame: loss has {} entries, expected {}", loss_.size(), n_loss));
  }
  if (transition_.size() != n_loss * num_states) {
    throw Error(fmt::format("MarkovGame: transition has {} entries, expected {}",
                            transition_.size(), n_loss * num_states));
  }
}

Matrix MarkovGame::LossMatrix(int s) const {
  Matrix m(num_actions_p1_, num_actions_p2_);
  for (int a = 0; a < num_actions_p1_; ++a) {
    for (int b = 0; b < num_actions_p2_; ++b) m(a, b) = loss(s, a, b);
  }
  return m;
}

MarkovGame MarkovGame::WithGamma(double gamma) const {
  MarkovGame copy = *this;
  copy.gamma_ = gamma;
  return copy;
}

std::string ValidationReport::ToString() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

ValidationReport ValidateGame(const MarkovGame& game) {
  ValidationReport report;
  const double gamma = game.gamma();
  if (!(gamma >= 0.5)) {
    report.violations.push_back(fmt::format("gamma below 1/2 (gamma={})", gamma));
  } else if (!(gamma < 1.0)) {
    report.violations.push_back(fmt::format("gamma not below 1 (gamma={})", gamma));
  }
  for (int s = 0; s < game.num_states(); ++s) {
    for (int a = 0; a < game.num_actions_p1(); ++a) {
      for (int b = 0; b < game.num_actions_p2(); ++b) {
        const double l = game.loss(s, a, b);
        if (!(l >= 0.0 && l <= 1.0)) {
          report.violations.push_back(
              fmt::format("loss({},{},{})={} outside [0,1]", s, a, b, l));
        }
        double sum = 0.0;
        bool negative = false;
        for (double p : game.transition(s, a, b)) {
          if (!(p >= 0.0)) negative = true;
          sum += p;
        }
        if (negative) {
          report.violations.push_back(
              fmt::format("transition({},{},{}) has a negative or non-finite entry", s, a, b));
        }
        if (!(std::abs(sum - 1.0) <= 1e-12)) {
          report.violations.push_back(
              fmt::format("transition({},{},{}) sums to {:.17g}", s, a, b, sum));
        }
      }
    }
  }
  return report;
}

void CheckJointPolicy(const MarkovGame& game, const JointPolicy& policy) {
  if (policy.x.num_states() != game.num_states() ||
      policy.x.num_actions() != game.num_actions_p1()) {
    throw Error(fmt::format("policy x has shape {}x{}, game expects {}x{}",
                            policy.x.num_states(), policy.x.num_actions(), game.num_states(),
                            game.num_actions_p1()));
  }
  if (policy.y.num_states() != game.num_states() ||
      policy.y.num_actions() != game.num_actions_p2()) {
    throw Error(fmt::format("policy y has shape {}x{}, game expects {}x{}",
                            policy.y.num_states(), policy.y.num_actions(), game.num_states(),
                            game.num_actions_p2()));
  }
  if (auto msg = CheckDistribution(policy.x); !msg.empty()) throw Error("policy x: " + msg);
  if (auto msg = CheckDistribution(policy.y); !msg.empty()) throw Error("policy y: " + msg);
}

ValueVector EvaluatePolicyPair(const MarkovGame& game, const JointPolicy& policy) {
  CheckJointPolicy(game, policy);
  const int S = game.num_states();
  Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(S, S);
  std::vector<double> cost(S, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < game.num_actions_p1(); ++a) {
      for (int b = 0; b < game.num_actions_p2(); ++b) {
        const double w = policy.x[s][a] * policy.y[s][b];
        if (w == 0.0) continue;
        cost[s] += w * game.loss(s, a, b);
        auto row = game.transition(s, a, b);
        for (int sp = 0; sp < S; ++sp) chain(s, sp) += w * row[sp];
      }
    }
  }
  return SolveDiscountedChain(cost, chain, game.gamma());
}

QTable QFromV(const MarkovGame& game, const ValueVector& values) {
  const int S = game.num_states();
  if (static_cast<int>(values.size()) != S) {
    throw Error(fmt::format("QFromV: value vector has {} entries, game has {} states",
                            values.size(), S));
  }
  QTable q;
  q.reserve(S);
  for (int s = 0; s < S; ++s) {
    Matrix m(game.num_actions_p1(), game.num_actions_p2());
    for (int a = 0; a < game.num_actions_p1(); ++a) {
      for (int b = 0; b < game.num_actions_p2(); ++b) {
        auto row = game.transition(s, a, b);
        double next = 0.0;
        for (int sp = 0; sp < S; ++sp) next += row[sp] * values[sp];
        m(a, b) = game.loss(s, a, b) + game.gamma() * next;
      }
    }
    q.push_back(std::move(m));
  }
  return q;
}

BestResponseResult BestResponse(const MarkovGame& game, const Policy& fixed, Player fixed_player,
                                const BestResponseOptions& options) {
  const int expected_actions =
      fixed_player == Player::kTwo ? game.num_actions_p2() : game.num_actions_p1();
  if (fixed.num_states() != game.num_states() || fixed.num_actions() != expected_actions) {
    throw Error("BestResponse: fixed policy shape does not match the game");
  }
  if (auto msg = CheckDistribution(fixed); !msg.empty()) {
    throw Error("BestResponse: fixed policy: " + msg);
  }
  const InducedMdp mdp = Induce(game, fixed, fixed_player);
  const int S = mdp.num_states;
  const int n = mdp.num_actions;
  const double gamma = mdp.gamma;

  auto greedy = [&](const ValueVector& w, std::vector<int>& policy, ValueVector& next) {
    for (int s = 0; s < S; ++s) {
      int best = 0;
      double best_value = mdp.ActionValue(s, 0, w);
      for (int a = 1; a < n; ++a) {
        const double v = mdp.ActionValue(s, a, w);
        if (mdp.Better(v, best_value)) {
          best = a;
          best_value = v;
        }
      }
      policy[s] = best;
      next[s] = best_value;
    }
  };

  // Value iteration: stop once ‖W_{k+1} − W_k‖ ≤ tol(1−γ)/γ, which bounds the
  // distance to the fixed point by tol.
  ValueVector w(S, 0.0), next(S, 0.0);
  std::vector<int> policy(S, 0);
  const double threshold = options.tolerance * (1.0 - gamma) / gamma;
  int iter = 0;
  for (;; ++iter) {
    if (iter >= options.max_iterations) {
      throw Error(fmt::format("BestResponse: value iteration exceeded {} iterations",
                              options.max_iterations));
    }
    greedy(w, policy, next);
    double diff = 0.0;
    for (int s = 0; s < S; ++s) diff = std::max(diff, std::abs(next[s] - w[s]));
    w.swap(next);
    if (diff <= threshold) break;
  }

  // Policy iteration from the greedy policy; switches only on strict
  // improvement so ties cannot cycle.
  greedy(w, policy, next);
  ValueVector exact = EvaluateDeterministic(mdp, policy);
  for (int round = 0; round < 1000; ++round) {
    bool changed = false;
    for (int s = 0; s < S; ++s) {
      const double scale = 1e-12 * std::max(1.0, std::abs(exact[s]));
      double best_value = mdp.ActionValue(s, policy[s], exact);
      for (int a = 0; a < n; ++a) {
        const double v = mdp.ActionValue(s, a, exact);
        if (mdp.minimize ? v < best_value - scale : v > best_value + scale) {
          best_value = v;
          policy[s] = a;
          changed = true;
        }
      }
    }
    if (!changed) break;
    exact = EvaluateDeterministic(mdp, policy);
  }

  BestResponseResult result;
  result.value = std::move(exact);
  result.policy = Policy::Pure(S, n, policy);
  return result;
}

}  // namespace ogda
