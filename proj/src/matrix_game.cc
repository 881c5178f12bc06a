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

#include "ogda/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace ogda {
namespace {

constexpr double kPivotEps = 1e-12;

std::string Describe(const Matrix& q) {
  std::string out = "[";
  for (int r = 0; r < q.rows(); ++r) {
    out += r == 0 ? "[" : ", [";
    for (int c = 0; c < q.cols(); ++c) {
      out += fmt::format("{}{:.17g}", c == 0 ? "" : ", ", q(r, c));
    }
    out += "]";
  }
  return out + "]";
}

void Normalize(std::vector<double>& p) {
  double sum = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    sum += v;
  }
  for (double& v : p) v /= sum;
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const Matrix& q, double tol) {
  const int n = q.rows();
  const int m = q.cols();
  if (n < 1 || m < 1) throw Error("SolveMatrixGame: empty matrix");
  double lo = std::numeric_limits<double>::infinity();
  for (double v : q.data()) {
    if (!std::isfinite(v)) throw LpFailure("SolveMatrixGame: non-finite entry in " + Describe(q), q);
    lo = std::min(lo, v);
  }
  // Shift so every entry is ≥ 1. With Q' > 0 the game value v' is positive and
  // w = x / v' solves  max 1^T w  s.t.  Q'^T w ≤ 1, w ≥ 0,  whose optimum is
  // 1/v'. The dual variables of the column constraints give y / v'.
  const double shift = 1.0 - lo;
  const int width = n + m + 1;
  const int rhs = n + m;
  std::vector<double> tab(static_cast<size_t>(m + 1) * width, 0.0);
  auto at = [&](int r, int c) -> double& { return tab[static_cast<size_t>(r) * width + c]; };
  std::vector<int> basis(m);
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a < n; ++a) at(b, a) = q(a, b) + shift;
    at(b, n + b) = 1.0;
    at(b, rhs) = 1.0;
    basis[b] = n + b;
  }
  for (int a = 0; a < n; ++a) at(m, a) = -1.0;

  const int max_pivots = 50 * (n + m) * (n + m) + 1000;
  for (int pivots = 0;; ++pivots) {
    if (pivots > max_pivots) {
      throw LpFailure("SolveMatrixGame: pivot limit reached on " + Describe(q), q);
    }
    // Bland: lowest-index column with negative reduced cost enters.
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (at(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double coef = at(i, enter);
      if (coef <= kPivotEps) continue;
      const double ratio = at(i, rhs) / coef;
      if (ratio < best_ratio - kPivotEps ||
          (ratio <= best_ratio + kPivotEps && leave >= 0 && basis[i] < basis[leave])) {
        if (ratio < best_ratio) best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw LpFailure("SolveMatrixGame: unbounded LP on " + Describe(q), q);
    const double pivot = at(leave, enter);
    for (int c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= factor * at(leave, c);
    }
    basis[leave] = enter;
  }

  const double objective = at(m, rhs);
  if (!(objective > 0.0)) {
    throw LpFailure("SolveMatrixGame: degenerate optimum on " + Describe(q), q);
  }
  MatrixGameSolution sol;
  sol.x_star.assign(n, 0.0);
  sol.y_star.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) sol.x_star[basis[i]] = at(i, rhs);
  }
  for (int b = 0; b < m; ++b) sol.y_star[b] = at(m, n + b);
  Normalize(sol.x_star);
  Normalize(sol.y_star);
  sol.value = 1.0 / objective - shift;

  sol.max_column_payoff = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < m; ++b) {
    double v = 0.0;
    for (int a = 0; a < n; ++a) v += sol.x_star[a] * q(a, b);
    sol.max_column_payoff = std::max(sol.max_column_payoff, v);
  }
  sol.min_row_payoff = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    double v = 0.0;
    for (int b = 0; b < m; ++b) v += q(a, b) * sol.y_star[b];
    sol.min_row_payoff = std::min(sol.min_row_payoff, v);
  }
  const double scaled_tol = tol * std::max(1.0, q.MaxAbs());
  if (sol.max_column_payoff > sol.value + scaled_tol ||
      sol.min_row_payoff < sol.value - scaled_tol) {
    throw LpFailure(fmt::format("SolveMatrixGame: certificate violated (value {:.17g}, "
                                "max column {:.17g}, min row {:.17g}) on {}",
                                sol.value, sol.max_column_payoff, sol.min_row_payoff,
                                Describe(q)),
                    q);
  }
  return sol;
}

double DualityGapState(const Matrix& q, std::span<const double> x, std::span<const double> y) {
  double max_col = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < q.cols(); ++b) {
    double v = 0.0;
    for (int a = 0; a < q.rows(); ++a) v += x[a] * q(a, b);
    max_col = std::max(max_col, v);
  }
  double min_row = std::numeric_limits<double>::infinity();
  for (int a = 0; a < q.rows(); ++a) {
    double v = 0.0;
    for (int b = 0; b < q.cols(); ++b) v += q(a, b) * y[b];
    min_row = std::min(min_row, v);
  }
  return max_col - min_row;
}

}  // namespace ogda
