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

// Independent reference computations used by the tests. They are written as
// straight-line brute force on purpose and share no code with the library
// beyond the data types.

#ifndef OGDA_TESTS_ORACLES_H_
#define OGDA_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ogda/game.h"
#include "ogda/types.h"

namespace ogda::testing {

// Player 2's best payoff against row mix x: max_b Σ_a x_a Q(a,b).
inline double MaxColumn(const Matrix& q, const std::vector<double>& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < q.cols(); ++b) {
    double v = 0.0;
    for (int a = 0; a < q.rows(); ++a) v += x[a] * q(a, b);
    best = std::max(best, v);
  }
  return best;
}

// min_x max_b (x^T Q)_b over a grid on Δ_A with the given step; A ∈ {1,2,3}.
inline double GridMinimax(const Matrix& q, double step = 1e-3) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = std::numeric_limits<double>::infinity();
  if (q.rows() == 1) return MaxColumn(q, {1.0});
  if (q.rows() == 2) {
    for (int i = 0; i <= n; ++i) {
      const double p = static_cast<double>(i) / n;
      best = std::min(best, MaxColumn(q, {p, 1.0 - p}));
    }
    return best;
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double p = static_cast<double>(i) / n;
      const double r = static_cast<double>(j) / n;
      best = std::min(best, MaxColumn(q, {p, r, 1.0 - p - r}));
    }
  }
  return best;
}

// Q^s(a,b) = σ(s,a,b) + γ Σ_{s'} p(s'|s,a,b) V^{s'} by an explicit loop.
inline QTable QFromVLoop(const MarkovGame& g, const ValueVector& v) {
  QTable q;
  for (int s = 0; s < g.num_states(); ++s) {
    Matrix m(g.num_actions_p1(), g.num_actions_p2());
    for (int a = 0; a < g.num_actions_p1(); ++a) {
      for (int b = 0; b < g.num_actions_p2(); ++b) {
        double cont = 0.0;
        for (int sp = 0; sp < g.num_states(); ++sp) cont += g.transition(s, a, b)[sp] * v[sp];
        m(a, b) = g.loss(s, a, b) + g.gamma() * cont;
      }
    }
    q.push_back(m);
  }
  return q;
}

// Entrywise minimum over all |A|^|S| deterministic Player-1 policies of
// V_{x,y}, evaluated with EvaluatePolicyPair.
inline ValueVector EnumerateBestResponseP1(const MarkovGame& g, const Policy& y) {
  const int S = g.num_states();
  const int A = g.num_actions_p1();
  int total = 1;
  for (int s = 0; s < S; ++s) total *= A;
  ValueVector best(S, std::numeric_limits<double>::infinity());
  for (int code = 0; code < total; ++code) {
    std::vector<int> actions(S);
    int c = code;
    for (int s = 0; s < S; ++s) {
      actions[s] = c % A;
      c /= A;
    }
    const ValueVector v = EvaluatePolicyPair(g, {Policy::Pure(S, A, actions), y});
    for (int s = 0; s < S; ++s) best[s] = std::min(best[s], v[s]);
  }
  return best;
}

// Squared distance from v to Δ₂ by a fine grid over the segment.
inline std::vector<double> GridProjectSimplex2(double v0, double v1, int n = 1'000'000) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> arg(2);
  for (int i = 0; i <= n; ++i) {
    const double p = static_cast<double>(i) / n;
    const double d = (p - v0) * (p - v0) + (1.0 - p - v1) * (1.0 - p - v1);
    if (d < best) {
      best = d;
      arg = {p, 1.0 - p};
    }
  }
  return arg;
}

}  // namespace ogda::testing

#endif  // OGDA_TESTS_ORACLES_H_
