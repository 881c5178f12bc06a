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

#ifndef OGDA_METRICS_H_
#define OGDA_METRICS_H_

#include <chrono>
#include <string>
#include <vector>

#include "ogda/game.h"
#include "ogda/ground_truth.h"
#include "ogda/learner.h"
#include "ogda/types.h"

namespace ogda {

// Path-length diagnostics
//   J^s_t = (1−α_t) J^s_{t−1} + α_t ‖z^s_t − z^s_{t−1}‖²
//   K^s_t = (1−α_t) K^s_{t−1} + α_t ‖Q^s_t − Q^s_{t−1}‖²   (max-entry norm)
// with z_0 = 0 and Q_0 = 0, so that at t = 1 (α_1 = 1) J^s_1 = ‖z^s_1‖².
struct Diagnostics {
  std::vector<double> j;
  std::vector<double> k;
  double j_max = 0.0;
  double k_max = 0.0;
};

Diagnostics DiagnosticsUpdate(const Diagnostics& previous, const JointPolicy& z, const JointPolicy& z_prev,
                              const QTable& q, const QTable& q_prev, double alpha);

// All-zero policy / Q table of matching shape (the t = 0 convention).
JointPolicy ZeroPolicyLike(const JointPolicy& z);
QTable ZeroQLike(const QTable& q);

// A CSV file with a leading "# key: value" metadata block.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int Column(const std::string& name) const;
  std::vector<double> ColumnValues(const std::string& name) const;
};

inline constexpr const char* kMetricsSchema = "ogda-metrics/1";

std::string WriteCsv(const CsvTable& table);
CsvTable ParseCsv(const std::string& text);

// Linear-interpolation quantile (type 7) of unsorted `values`.
double Quantile(std::vector<double> values, double p);

// Per t and metric: <metric>_median, <metric>_q1, <metric>_q3 across
// repetitions. All tables must share columns and t values.
CsvTable Aggregate(const std::vector<CsvTable>& runs);

struct RecorderOptions {
  int cadence = 1;
  // Evaluate the game duality gap on every iteration so avg_gap is the exact
  // running average; otherwise it averages the logged rows only.
  bool gap_every_step = false;
  // Log max |estimate − exact| (for sampled estimators).
  bool estimator_error = false;
  // Adds a wall_ms column. Breaks byte-for-byte reproducibility of the CSV.
  bool timing = false;
};

// Self-play metrics, one row every `cadence` iterations (t = c, 2c, ...).
// Columns:
//   t              iteration
//   game_gap       max_s [max_y' V^s_{x̂_t,y'} − min_x' V^s_{x',ŷ_t}]
//   avg_gap        running average of game_gap
//   mean_dist_sq   (1/|S|) Σ_s dist⋆²(ẑ^s_t)
//   max_state_gap  max_s of the stage-game gap of ẑ^s_t in Q⋆^s
//   gamma_t        max_s ‖Q^s_t − Q⋆^s‖
//   j_t, k_t       path-length diagnostics
//   q_step         max_s ‖Q^s_t − Q^s_{t−1}‖
//   q_step_bound   γ α_{t−1}/(1−γ), α_0 = 1
//   est_error      max estimator error vs exact (nan unless enabled)
//   wall_ms        elapsed milliseconds (only with timing)
class MetricsRecorder : public IterationObserver {
 public:
  MetricsRecorder(const MarkovGame& game, const GroundTruth& truth, RecorderOptions options);

  void Observe(const IterationView& view) override;

  static std::vector<std::string> Columns(bool timing);
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  CsvTable Table(std::vector<std::string> metadata) const;
  // Iterations (logged or not) where q_step exceeded q_step_bound.
  int q_step_violations() const { return q_step_violations_; }

 private:
  const MarkovGame& game_;
  const GroundTruth& truth_;
  RecorderOptions options_;
  Diagnostics diagnostics_;
  JointPolicy prev_z_;
  QTable prev_q_;
  double prev_alpha_ = 1.0;
  double gap_sum_ = 0.0;
  int gap_count_ = 0;
  int q_step_violations_ = 0;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::vector<double>> rows_;
};

// Single-player (rationality) metrics against a fixed opponent y. Columns:
//   t, exploitability (max_s V^s_{x̂_t,y} − min_x' V^s_{x',y}),
//   avg_exploitability, mean_br_dist_sq ((1/|S|) Σ_s dist² of x̂^s_t to the
//   best-response set), gamma_t (vs the reduced game's Q⋆), j_t, k_t,
//   wall_ms (only with timing).
class RationalityRecorder : public IterationObserver {
 public:
  RationalityRecorder(const MarkovGame& game, const Policy& opponent,
                      const GroundTruth& reduced_truth, RecorderOptions options);

  void Observe(const IterationView& view) override;

  static std::vector<std::string> Columns(bool timing);
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  CsvTable Table(std::vector<std::string> metadata) const;

 private:
  const MarkovGame& game_;
  Policy opponent_;
  const GroundTruth& truth_;
  RecorderOptions options_;
  ValueVector best_response_value_;
  Diagnostics diagnostics_;
  JointPolicy prev_z_;
  QTable prev_q_;
  double sum_ = 0.0;
  int count_ = 0;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::vector<double>> rows_;
};

// max_s V^s_{x,y} − min_{x'} V^s_{x',y}.
double Exploitability(const MarkovGame& game, const Policy& x, const Policy& y);

}  // namespace ogda

#endif  // OGDA_METRICS_H_
