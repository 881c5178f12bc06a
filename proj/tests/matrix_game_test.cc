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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ogda/matrix_game.h"
#include "ogda/rng.h"
#include "oracles.h"

namespace ogda {
namespace {

Matrix RandomMatrix(int rows, int cols, Rng& rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) m(a, b) = scale * rng.Uniform();
  }
  return m;
}

void ExpectDistribution(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    EXPECT_GE(v, 0.0);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(SolveMatrixGameTest, ConstantMatrix) {
  const MatrixGameSolution sol = SolveMatrixGame(Matrix(3, 2, 0.7));
  EXPECT_NEAR(sol.value, 0.7, 1e-12);
  ExpectDistribution(sol.x_star);
  ExpectDistribution(sol.y_star);
}

TEST(SolveMatrixGameTest, MatchingPennies) {
  const Matrix q = Matrix::FromRows({{1, 0}, {0, 1}});
  const MatrixGameSolution sol = SolveMatrixGame(q);
  EXPECT_NEAR(sol.value, 0.5, 1e-12);
  EXPECT_NEAR(sol.x_star[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.y_star[0], 0.5, 1e-12);
  EXPECT_NEAR(testing::GridMinimax(q), 0.5, 1e-12);
}

TEST(SolveMatrixGameTest, DominantRow) {
  const MatrixGameSolution sol = SolveMatrixGame(Matrix::FromRows({{0, 0}, {1, 1}}));
  EXPECT_NEAR(sol.value, 0.0, 1e-12);
  EXPECT_NEAR(sol.x_star[0], 1.0, 1e-12);
}

TEST(SolveMatrixGameTest, RectangularAndNegativeEntries) {
  const Matrix q = Matrix::FromRows({{-2, 3, 1}, {4, -1, 0}});
  const MatrixGameSolution sol = SolveMatrixGame(q);
  EXPECT_NEAR(sol.value, testing::GridMinimax(q, 1e-4), 1e-3);
  EXPECT_LE(sol.max_column_payoff, sol.value + 1e-9 * 4);
  EXPECT_GE(sol.min_row_payoff, sol.value - 1e-9 * 4);
}

TEST(SolveMatrixGameTest, MatchesGridOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const Matrix q = RandomMatrix(n, n, rng);
    const MatrixGameSolution sol = SolveMatrixGame(q);
    EXPECT_NEAR(sol.value, testing::GridMinimax(q), 2e-3);
  }
}

TEST(SolveMatrixGameTest, CertificatesHoldOnRandomShapes) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + trial % 6;
    const int cols = 1 + (trial / 6) % 6;
    const Matrix q = RandomMatrix(rows, cols, rng, 20.0);
    const MatrixGameSolution sol = SolveMatrixGame(q);
    ExpectDistribution(sol.x_star);
    ExpectDistribution(sol.y_star);
    const double tol = 1e-9 * std::max(1.0, q.MaxAbs());
    EXPECT_LE(sol.max_column_payoff, sol.value + tol);
    EXPECT_GE(sol.min_row_payoff, sol.value - tol);
    EXPECT_NEAR(DualityGapState(q, sol.x_star, sol.y_star), 0.0, 2 * tol);
  }
}

TEST(SolveMatrixGameTest, DegenerateTiesDoNotCycle) {
  // Many equal entries stress the ratio test.
  const Matrix q = Matrix::FromRows({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  const MatrixGameSolution sol = SolveMatrixGame(q);
  EXPECT_NEAR(sol.value, 0.5, 1e-12);
}

TEST(SolveMatrixGameTest, ScalingRescalesValue) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix q = RandomMatrix(3, 4, rng);
    const double c = 0.05 + 0.95 * rng.Uniform();
    Matrix scaled = q;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 4; ++b) scaled(a, b) = c * q(a, b);
    }
    const MatrixGameSolution sol = SolveMatrixGame(q);
    const MatrixGameSolution sol_scaled = SolveMatrixGame(scaled);
    EXPECT_NEAR(sol_scaled.value, c * sol.value, 1e-12);
    // The witnesses of the original game certify the scaled one.
    EXPECT_NEAR(DualityGapState(scaled, sol.x_star, sol.y_star), 0.0, 1e-9);
  }
}

TEST(DualityGapStateTest, MatchingPenniesPureCorner) {
  const Matrix q = Matrix::FromRows({{1, 0}, {0, 1}});
  EXPECT_DOUBLE_EQ(DualityGapState(q, std::vector<double>{1, 0}, std::vector<double>{1, 0}), 1.0);
}

TEST(DualityGapStateTest, MatchingPenniesUniformIsZero) {
  const Matrix q = Matrix::FromRows({{1, 0}, {0, 1}});
  EXPECT_EQ(DualityGapState(q, std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5}), 0.0);
}

TEST(DualityGapStateTest, NonnegativeOnRandomPairs) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix q = RandomMatrix(3, 2, rng);
    EXPECT_GE(DualityGapState(q, rng.SimplexPoint(3), rng.SimplexPoint(2)), -1e-15);
  }
}

}  // namespace
}  // namespace ogda
