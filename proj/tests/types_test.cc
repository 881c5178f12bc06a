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
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "ogda/rng.h"
#include "ogda/simplex_projection.h"
#include "ogda/types.h"
#include "oracles.h"

namespace ogda {
namespace {

TEST(PolicyTest, UniformConstructorFillsEveryState) {
  Policy p(3, 4);
  for (int s = 0; s < 3; ++s) {
    for (double v : p[s]) EXPECT_EQ(v, 0.25);
  }
  EXPECT_EQ(CheckDistribution(p), "");
}

TEST(PolicyTest, FromRowsRoundTrips) {
  const std::vector<std::vector<double>> rows = {{0.1, 0.9}, {1.0, 0.0}};
  EXPECT_EQ(Policy::FromRows(rows).Rows(), rows);
}

TEST(PolicyTest, PureIsPointMass) {
  Policy p = Policy::Pure(2, 3, {2, 0});
  EXPECT_EQ(p.Rows(), (std::vector<std::vector<double>>{{0, 0, 1}, {1, 0, 0}}));
}

TEST(PolicyTest, CheckDistributionReportsViolations) {
  EXPECT_NE(CheckDistribution(Policy::FromRows({{0.5, 0.6}})), "");
  EXPECT_NE(CheckDistribution(Policy::FromRows({{-0.1, 1.1}})), "");
}

TEST(MatrixTest, MaxAbsAndDiff) {
  Matrix a = Matrix::FromRows({{1, -3}, {2, 0}});
  Matrix b = Matrix::FromRows({{1, -1}, {2, 0.5}});
  EXPECT_EQ(a.MaxAbs(), 3.0);
  EXPECT_EQ(MaxAbsDiff(a, b), 2.0);
}

TEST(ProjectSimplexTest, FeasiblePointIsUnchanged) {
  const std::vector<double> v = {0.3, 0.7};
  EXPECT_EQ(ProjectSimplex(v), v);
}

TEST(ProjectSimplexTest, SymmetricNegativeInput) {
  const std::vector<double> v = {-1.0, -1.0};
  const auto p = ProjectSimplex(v);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
}

TEST(ProjectSimplexTest, ClipsToVertexAgainstGridOracle) {
  const std::vector<double> v = {1.2, 0.2};
  const auto p = ProjectSimplex(v);
  const auto grid = testing::GridProjectSimplex2(1.2, 0.2);
  EXPECT_NEAR(p[0], grid[0], 1e-6);
  EXPECT_NEAR(p[1], grid[1], 1e-6);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
}

TEST(ProjectSimplexTest, MatchesGridOracleOnRandomPoints) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double v0 = 4.0 * rng.Uniform() - 2.0;
    const double v1 = 4.0 * rng.Uniform() - 2.0;
    const std::vector<double> v = {v0, v1};
    const auto p = ProjectSimplex(v);
    const auto grid = testing::GridProjectSimplex2(v0, v1, 200'000);
    EXPECT_NEAR(p[0], grid[0], 1e-5) << v0 << " " << v1;
  }
}

TEST(ProjectSimplexTest, OutputIsDistributionAndSatisfiesOptimality) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<double> v(n);
    for (double& e : v) e = 6.0 * rng.Uniform() - 3.0;
    const auto p = ProjectSimplex(v);
    double sum = 0.0;
    for (double e : p) {
      EXPECT_GE(e, 0.0);
      sum += e;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    // Variational inequality: (v − p)ᵀ(u − p) ≤ 0 for every vertex u.
    for (int k = 0; k < n; ++k) {
      double ip = 0.0;
      for (int i = 0; i < n; ++i) ip += (v[i] - p[i]) * ((i == k ? 1.0 : 0.0) - p[i]);
      EXPECT_LE(ip, 1e-12);
    }
  }
}

TEST(ProjectSimplexTest, RejectsBadInput) {
  EXPECT_THROW(ProjectSimplex(std::vector<double>{}), Error);
  EXPECT_THROW(ProjectSimplex(std::vector<double>{std::numeric_limits<double>::quiet_NaN(), 0.0}),
               Error);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, UniformInUnitInterval) {
  Rng rng(3);
  for (int i = 0; i < 10'000; ++i) {
    const double u = rng.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngTest, CategoricalNeverPicksZeroMass) {
  Rng rng(5);
  const std::vector<double> probs = {0.0, 0.3, 0.0, 0.7};
  for (int i = 0; i < 10'000; ++i) {
    const int k = rng.Categorical(probs);
    EXPECT_TRUE(k == 1 || k == 3);
  }
}

}  // namespace
}  // namespace ogda
