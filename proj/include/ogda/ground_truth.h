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

#ifndef OGDA_GROUND_TRUTH_H_
#define OGDA_GROUND_TRUTH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ogda/game.h"
#include "ogda/matrix_game.h"
#include "ogda/types.h"

namespace ogda {

struct ShapleyOptions {
  // Target accuracy ‖V_K − V⋆‖_∞ ≤ tolerance.
  double tolerance = 1e-8;
  int max_iterations = 1'000'000;
};

// Minimax values of a Markov game together with per-state witnesses.
struct GroundTruth {
  ValueVector v_star;
  QTable q_star;
  // Minimax / maximin strategies of the stage games Q⋆^s.
  JointPolicy witnesses;
  double tolerance = 0.0;
  int iterations = 0;
  // ‖V_{k+1} − V_k‖_∞ for every Shapley iteration, in order.
  std::vector<double> residuals;
};

// Shapley value iteration V_{k+1}^s = val(Q(V_k)^s). Stops once
// ‖V_{k+1} − V_k‖_∞ ≤ tol(1−γ)/(2γ); by the γ/(1−γ) contraction bound this
// leaves ‖V_K − V⋆‖_∞ ≤ tol.
GroundTruth ShapleySolve(const MarkovGame& game, const ShapleyOptions& options = {});

// max_s [ max_{y'} V^s_{x,y'} − min_{x'} V^s_{x',y} ], via two best responses.
double GameDualityGap(const MarkovGame& game, const JointPolicy& policy);

// Per-state duality gaps of `policy` measured in the stage games Q⋆^s.
std::vector<double> StateDualityGaps(const GroundTruth& truth, const JointPolicy& policy);

// Euclidean projection onto {u ∈ Δ : N u ≤ c} (rows of N are constraint
// normals). A feasible start comes from a matrix-game LP; a primal active-set
// method then solves the projection QP exactly.
struct PolytopeProjection {
  std::vector<double> point;
  // max(primal infeasibility, stationarity error, negative multiplier);
  // zero for an exact KKT point.
  double kkt_residual = 0.0;
  int iterations = 0;
};

struct ProjectionOptions {
  double kkt_tolerance = 1e-9;
  int max_iterations = 10'000;
};

PolytopeProjection ProjectOntoPolytope(std::span<const double> z, const Matrix& normals,
                                       std::span<const double> bounds,
                                       const ProjectionOptions& options = {});

struct OptimalSetDistance {
  // dist⋆²(z^s) = ‖x − Π_{X⋆}x‖² + ‖y − Π_{Y⋆}y‖² per state.
  std::vector<double> per_state;
  // (1/|S|) Σ_s dist⋆²(z^s).
  double mean = 0.0;
  JointPolicy projection;
};

// Distance to the per-state optimal sets, relaxed by the ground-truth
// tolerance: X⋆^s = {x ∈ Δ : Q⋆^{sT} x ≤ (V⋆^s + tol)1},
// Y⋆^s = {y ∈ Δ : Q⋆^s y ≥ (V⋆^s − tol)1}.
OptimalSetDistance DistToOptimalSets(const GroundTruth& truth, const JointPolicy& policy,
                                     const ProjectionOptions& options = {});

// Same, for Player 1 only.
std::vector<double> DistToOptimalSetsX(const GroundTruth& truth, const Policy& x,
                                       const ProjectionOptions& options = {});

// Empirical margin constant: min over uniform simplex samples (per state) of
// duality_gap / dist⋆, ignoring samples with dist⋆ < 1e-6. Since it is a
// minimum over samples it upper-bounds the true constant.
double MarginConstantEstimate(const GroundTruth& truth, int num_samples, uint64_t seed);

}  // namespace ogda

#endif  // OGDA_GROUND_TRUTH_H_
