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

#ifndef OGDA_MATRIX_GAME_H_
#define OGDA_MATRIX_GAME_H_

#include <vector>

#include "ogda/types.h"

namespace ogda {

// Solution of min_x max_y x^T Q y (Player 1 picks rows and minimizes).
struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> x_star;
  std::vector<double> y_star;
  // max_b (x_star^T Q)_b: the most Player 2 can get against x_star.
  double max_column_payoff = 0.0;
  // min_a (Q y_star)_a: the least Player 1 can pay against y_star.
  double min_row_payoff = 0.0;
};

// Thrown when the LP certificate fails to hold; carries the offending matrix.
class LpFailure : public Error {
 public:
  LpFailure(const std::string& what, Matrix matrix) : Error(what), matrix_(std::move(matrix)) {}
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

// Solves the matrix game with a dense tableau simplex method (Bland's rule).
// The returned strategies satisfy max_column_payoff ≤ value + tol and
// min_row_payoff ≥ value − tol, with tol scaled by max(1, ‖Q‖).
MatrixGameSolution SolveMatrixGame(const Matrix& q, double tol = 1e-9);

// max_b (x^T Q)_b − min_a (Q y)_a.
double DualityGapState(const Matrix& q, std::span<const double> x, std::span<const double> y);

}  // namespace ogda

#endif  // OGDA_MATRIX_GAME_H_
