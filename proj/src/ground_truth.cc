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

#include "ogda/ground_truth.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ogda/rng.h"
#include "ogda/simplex_projection.h"

namespace ogda {
namespace {

struct HalfSpace {
  std::vector<double> normal;
  double bound = 0.0;
  double norm_sq = 0.0;
};

double Dot(std::span<const double> u, std::span<const double> v) {
  double d = 0.0;
  for (size_t i = 0; i < u.size(); ++i) d += u[i] * v[i];
  return d;
}

double Infeasibility(const std::vector<HalfSpace>& spaces, std::span<const double> u) {
  double worst = 0.0;
  double sum = 0.0;
  for (double v : u) {
    worst = std::max(worst, -v);
    sum += v;
  }
  worst = std::max(worst, std::abs(sum - 1.0));
  for (const auto& h : spaces) worst = std::max(worst, Dot(h.normal, u) - h.bound);
  return worst;
}

}  // namespace

GroundTruth ShapleySolve(const MarkovGame& game, const ShapleyOptions& options) {
  const int S = game.num_states();
  const double gamma = game.gamma();
  const double threshold = options.tolerance * (1.0 - gamma) / (2.0 * gamma);
  GroundTruth truth;
  truth.tolerance = options.tolerance;
  ValueVector v(S, 0.0), next(S, 0.0);
  for (int k = 0;; ++k) {
    if (k >= options.max_iterations) {
      throw Error(fmt::format("ShapleySolve: iteration cap {} exceeded, last residual {:.3e}",
                              options.max_iterations,
                              truth.residuals.empty() ? 0.0 : truth.residuals.back()));
    }
    QTable q = QFromV(game, v);
    double diff = 0.0;
    for (int s = 0; s < S; ++s) {
      next[s] = SolveMatrixGame(q[s]).value;
      diff = std::max(diff, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    truth.residuals.push_back(diff);
    truth.iterations = k + 1;
    if (diff <= threshold) break;
  }
  truth.v_star = v;
  truth.q_star = QFromV(game, v);
  truth.witnesses.x = Policy(S, game.num_actions_p1());
  truth.witnesses.y = Policy(S, game.num_actions_p2());
  for (int s = 0; s < S; ++s) {
    const MatrixGameSolution sol = SolveMatrixGame(truth.q_star[s]);
    std::copy(sol.x_star.begin(), sol.x_star.end(), truth.witnesses.x[s].begin());
    std::copy(sol.y_star.begin(), sol.y_star.end(), truth.witnesses.y[s].begin());
  }
  return truth;
}

double GameDualityGap(const MarkovGame& game, const JointPolicy& policy) {
  CheckJointPolicy(game, policy);
  const ValueVector p2_best = BestResponse(game, policy.x, Player::kOne).value;
  const ValueVector p1_best = BestResponse(game, policy.y, Player::kTwo).value;
  double gap = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < game.num_states(); ++s) gap = std::max(gap, p2_best[s] - p1_best[s]);
  return gap;
}

std::vector<double> StateDualityGaps(const GroundTruth& truth, const JointPolicy& policy) {
  std::vector<double> gaps;
  for (size_t s = 0; s < truth.q_star.size(); ++s) {
    gaps.push_back(DualityGapState(truth.q_star[s], policy.x[static_cast<int>(s)],
                                   policy.y[static_cast<int>(s)]));
  }
  return gaps;
}

PolytopeProjection ProjectOntoPolytope(std::span<const double> z, const Matrix& normals,
                                       std::span<const double> bounds,
                                       const ProjectionOptions& options) {
  const int n = static_cast<int>(z.size());
  if (n == 0) throw Error("ProjectOntoPolytope: empty point");
  if (normals.cols() != n || static_cast<size_t>(normals.rows()) != bounds.size()) {
    throw Error("ProjectOntoPolytope: constraint shape mismatch");
  }
  // Inequalities a_iᵀu ≤ b_i: the n sign constraints first, then the faces.
  std::vector<HalfSpace> all;
  for (int j = 0; j < n; ++j) {
    HalfSpace h;
    h.normal.assign(n, 0.0);
    h.normal[j] = -1.0;
    h.norm_sq = 1.0;
    all.push_back(std::move(h));
  }
  std::vector<HalfSpace> spaces;
  for (int i = 0; i < normals.rows(); ++i) {
    HalfSpace h;
    h.normal.resize(n);
    for (int j = 0; j < n; ++j) h.normal[j] = normals(i, j);
    h.bound = bounds[i];
    h.norm_sq = Dot(h.normal, h.normal);
    if (h.norm_sq == 0.0) {
      if (h.bound < 0.0) throw Error("ProjectOntoPolytope: infeasible polytope (0 ≤ c < 0)");
      continue;
    }
    spaces.push_back(h);
    all.push_back(std::move(h));
  }

  PolytopeProjection result;
  if (spaces.empty()) {
    result.point = ProjectSimplex(z);
    return result;
  }

  // Feasible start: min_{u ∈ Δ} max_i (a_iᵀu − b_i) is a matrix game.
  Matrix phase1(n, static_cast<int>(spaces.size()));
  double scale = 1.0;
  for (size_t i = 0; i < spaces.size(); ++i) {
    scale = std::max(scale, std::abs(spaces[i].bound));
    for (int j = 0; j < n; ++j) phase1(j, static_cast<int>(i)) = spaces[i].normal[j] - spaces[i].bound;
  }
  const MatrixGameSolution start = SolveMatrixGame(phase1);
  if (start.max_column_payoff > 1e-9 * scale) {
    throw Error(fmt::format("ProjectOntoPolytope: infeasible polytope (violation {:.3e})",
                            start.max_column_payoff));
  }
  std::vector<double> u = start.x_star;

  // Primal active-set iterations on min ½‖u − z‖² with 1ᵀu = 1 always active.
  const int m = static_cast<int>(all.size());
  std::vector<bool> in_working(m, false);
  std::vector<int> working;
  std::vector<double> g(n), p(n);
  for (int iter = 1;; ++iter) {
    if (iter > options.max_iterations) {
      throw Error(fmt::format("ProjectOntoPolytope: no convergence after {} iterations",
                              options.max_iterations));
    }
    result.iterations = iter;
    const int k = 1 + static_cast<int>(working.size());
    Eigen::MatrixXd at(n, k);
    for (int j = 0; j < n; ++j) at(j, 0) = 1.0;
    for (int w = 1; w < k; ++w) {
      for (int j = 0; j < n; ++j) at(j, w) = all[working[w - 1]].normal[j];
    }
    Eigen::VectorXd gv(n);
    for (int j = 0; j < n; ++j) gv(j) = g[j] = u[j] - z[j];
    // Multipliers μ solve Aᵀμ ≈ g in least squares. The step is −g projected
    // onto the null space of A, spanned by the trailing columns of Q.
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(at);
    const Eigen::VectorXd mu = qr.solve(gv);
    const Eigen::MatrixXd q_full = qr.householderQ();
    const int rank = static_cast<int>(qr.rank());
    const Eigen::MatrixXd null_basis = q_full.rightCols(n - rank);
    const Eigen::VectorXd pv = -(null_basis * (null_basis.transpose() * gv));
    double p_norm = 0.0, g_norm = 0.0;
    for (int j = 0; j < n; ++j) {
      p[j] = pv(j);
      p_norm = std::max(p_norm, std::abs(p[j]));
      g_norm = std::max(g_norm, std::abs(g[j]));
    }
    if (p_norm <= 1e-13 * std::max(1.0, g_norm)) {
      // Stationary on the working set: inequality multipliers are ν_i = −μ_i.
      int drop = -1;
      double most_negative = -1e-13;
      for (int w = 1; w < k; ++w) {
        if (-mu(w) < most_negative) {
          most_negative = -mu(w);
          drop = w - 1;
        }
      }
      if (drop < 0) {
        double residual = std::max(p_norm, Infeasibility(spaces, u));
        for (int w = 1; w < k; ++w) residual = std::max(residual, mu(w));
        result.point = std::move(u);
        result.kkt_residual = residual;
        if (residual > options.kkt_tolerance) {
          throw Error(fmt::format("ProjectOntoPolytope: KKT residual {:.3e} above tolerance",
                                  residual));
        }
        return result;
      }
      in_working[working[drop]] = false;
      working.erase(working.begin() + drop);
      continue;
    }
    double step = 1.0;
    int blocking = -1;
    for (int i = 0; i < m; ++i) {
      if (in_working[i]) continue;
      const double rate = Dot(all[i].normal, p);
      if (rate <= 1e-14 * std::sqrt(all[i].norm_sq) * p_norm) continue;
      const double ratio = std::max(0.0, (all[i].bound - Dot(all[i].normal, u)) / rate);
      if (ratio < step) {
        step = ratio;
        blocking = i;
      }
    }
    for (int j = 0; j < n; ++j) u[j] += step * p[j];
    if (blocking >= 0) {
      in_working[blocking] = true;
      working.push_back(blocking);
    }
    // Sign constraints in the working set hold exactly.
    for (int i : working) {
      if (i < n) u[i] = 0.0;
    }
  }
}

namespace {

std::vector<double> ProjectStatePlayer(const GroundTruth& truth, int s, std::span<const double> v,
                                       Player player, const ProjectionOptions& options) {
  const Matrix& q = truth.q_star[s];
  const double value = truth.v_star[s];
  const double tol = truth.tolerance;
  if (player == Player::kOne) {
    Matrix normals(q.cols(), q.rows());
    std::vector<double> bounds(q.cols(), value + tol);
    for (int b = 0; b < q.cols(); ++b) {
      for (int a = 0; a < q.rows(); ++a) normals(b, a) = q(a, b);
    }
    return ProjectOntoPolytope(v, normals, bounds, options).point;
  }
  Matrix normals(q.rows(), q.cols());
  std::vector<double> bounds(q.rows(), -(value - tol));
  for (int a = 0; a < q.rows(); ++a) {
    for (int b = 0; b < q.cols(); ++b) normals(a, b) = -q(a, b);
  }
  return ProjectOntoPolytope(v, normals, bounds, options).point;
}

}  // namespace

OptimalSetDistance DistToOptimalSets(const GroundTruth& truth, const JointPolicy& policy,
                                     const ProjectionOptions& options) {
  const int S = static_cast<int>(truth.v_star.size());
  OptimalSetDistance out;
  out.projection.x = policy.x;
  out.projection.y = policy.y;
  double total = 0.0;
  for (int s = 0; s < S; ++s) {
    const auto px = ProjectStatePlayer(truth, s, policy.x[s], Player::kOne, options);
    const auto py = ProjectStatePlayer(truth, s, policy.y[s], Player::kTwo, options);
    const double d = SquaredDistance(policy.x[s], px) + SquaredDistance(policy.y[s], py);
    std::copy(px.begin(), px.end(), out.projection.x[s].begin());
    std::copy(py.begin(), py.end(), out.projection.y[s].begin());
    out.per_state.push_back(d);
    total += d;
  }
  out.mean = total / S;
  return out;
}

std::vector<double> DistToOptimalSetsX(const GroundTruth& truth, const Policy& x,
                                       const ProjectionOptions& options) {
  std::vector<double> out;
  for (int s = 0; s < static_cast<int>(truth.v_star.size()); ++s) {
    const auto px = ProjectStatePlayer(truth, s, x[s], Player::kOne, options);
    out.push_back(SquaredDistance(x[s], px));
  }
  return out;
}

double MarginConstantEstimate(const GroundTruth& truth, int num_samples, uint64_t seed) {
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  bool kept = false;
  for (int s = 0; s < static_cast<int>(truth.q_star.size()); ++s) {
    const Matrix& q = truth.q_star[s];
    for (int i = 0; i < num_samples; ++i) {
      const std::vector<double> x = rng.SimplexPoint(q.rows());
      const std::vector<double> y = rng.SimplexPoint(q.cols());
      const auto px = ProjectStatePlayer(truth, s, x, Player::kOne, {});
      const auto py = ProjectStatePlayer(truth, s, y, Player::kTwo, {});
      const double dist = std::sqrt(SquaredDistance(x, px) + SquaredDistance(y, py));
      if (dist < 1e-6) continue;
      kept = true;
      best = std::min(best, DualityGapState(q, x, y) / dist);
    }
  }
  if (!kept) throw Error("MarginConstantEstimate: game appears fully optimal");
  return best;
}

}  // namespace ogda
