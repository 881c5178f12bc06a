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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ogda/estimator.h"
#include "ogda/generator.h"
#include "ogda/ground_truth.h"
#include "ogda/learner.h"
#include "ogda/metrics.h"
#include "ogda/rng.h"
#include "ogda/svg_plot.h"

namespace ogda {
namespace {

Policy RandomPolicy(int s, int n, Rng& rng) {
  std::vector<double> probs;
  for (int i = 0; i < s; ++i) {
    auto p = rng.SimplexPoint(n);
    probs.insert(probs.end(), p.begin(), p.end());
  }
  return Policy(s, n, probs);
}

TEST(DiagnosticsTest, FirstStepIsSquaredNorm) {
  const JointPolicy z{Policy::FromRows({{0.2, 0.8}}), Policy::FromRows({{1.0, 0.0}})};
  const QTable q = {Matrix::FromRows({{3.0, -1.0}, {0.5, 2.0}})};
  const Diagnostics d = DiagnosticsUpdate({}, z, ZeroPolicyLike(z), q, ZeroQLike(q), 1.0);
  EXPECT_DOUBLE_EQ(d.j[0], 0.04 + 0.64 + 1.0);
  EXPECT_DOUBLE_EQ(d.k[0], 9.0);
  EXPECT_EQ(d.j_max, d.j[0]);
}

TEST(DiagnosticsTest, ConstantInputsDecayGeometrically) {
  const JointPolicy z{Policy(2, 2), Policy(2, 3)};
  const QTable q = {Matrix(2, 3, 1.0), Matrix(2, 3, 2.0)};
  Diagnostics d = DiagnosticsUpdate({}, z, ZeroPolicyLike(z), q, ZeroQLike(q), 1.0);
  for (int t = 2; t < 20; ++t) {
    const double alpha = AlphaSchedule(t, 0.9);
    const Diagnostics next = DiagnosticsUpdate(d, z, z, q, q, alpha);
    for (int s = 0; s < 2; ++s) {
      EXPECT_DOUBLE_EQ(next.j[s], (1.0 - alpha) * d.j[s]);
      EXPECT_DOUBLE_EQ(next.k[s], (1.0 - alpha) * d.k[s]);
    }
    d = next;
  }
}

TEST(DiagnosticsTest, NonnegativeOnRandomSequences) {
  Rng rng(71);
  JointPolicy prev{RandomPolicy(3, 2, rng), RandomPolicy(3, 2, rng)};
  QTable q_prev = {Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)};
  Diagnostics d;
  for (int t = 1; t < 50; ++t) {
    const JointPolicy z{RandomPolicy(3, 2, rng), RandomPolicy(3, 2, rng)};
    QTable q = q_prev;
    for (auto& m : q) m(0, 1) += rng.Uniform() - 0.5;
    d = DiagnosticsUpdate(d, z, prev, q, q_prev, AlphaSchedule(t, 0.5));
    for (double v : d.j) EXPECT_GE(v, 0.0);
    for (double v : d.k) EXPECT_GE(v, 0.0);
    prev = z;
    q_prev = q;
  }
}

TEST(CsvTest, WriteParseRoundTrip) {
  CsvTable table;
  table.metadata = {"schema: ogda-metrics/1", "seed: 3"};
  table.columns = {"t", "a", "b"};
  table.rows = {{1, 0.1, 1e-300}, {2, 1.0 / 3.0, std::nan("")}};
  const CsvTable back = ParseCsv(WriteCsv(table));
  EXPECT_EQ(back.metadata, table.metadata);
  EXPECT_EQ(back.columns, table.columns);
  EXPECT_EQ(back.rows[0], table.rows[0]);
  EXPECT_EQ(back.rows[1][1], 1.0 / 3.0);
  EXPECT_TRUE(std::isnan(back.rows[1][2]));
  EXPECT_EQ(WriteCsv(back), WriteCsv(table));
}

TEST(CsvTest, RaggedRowIsAnError) {
  EXPECT_THROW(ParseCsv("t,a\n1,2,3\n"), Error);
  EXPECT_THROW(ParseCsv("t,a\n1,x\n"), Error);
}

TEST(QuantileTest, LinearInterpolation) {
  EXPECT_EQ(Quantile({3, 1, 2}, 0.5), 2.0);
  EXPECT_EQ(Quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_EQ(Quantile({1, 2, 3, 4, 5}, 0.25), 2.0);
  EXPECT_EQ(Quantile({10, 20}, 0.75), 17.5);
}

TEST(AggregateTest, RecomputesFromRuns) {
  std::vector<CsvTable> runs(5);
  Rng rng(72);
  for (auto& run : runs) {
    run.columns = {"t", "m"};
    for (int t = 1; t <= 4; ++t) run.rows.push_back({double(t), rng.Uniform()});
  }
  const CsvTable agg = ParseCsv(WriteCsv(Aggregate(runs)));
  ASSERT_EQ(agg.columns, (std::vector<std::string>{"t", "m_median", "m_q1", "m_q3"}));
  for (int r = 0; r < 4; ++r) {
    std::vector<double> values;
    for (const auto& run : runs) values.push_back(run.rows[r][1]);
    std::sort(values.begin(), values.end());
    EXPECT_EQ(agg.rows[r][1], values[2]);
    EXPECT_EQ(agg.rows[r][2], values[1]);
    EXPECT_EQ(agg.rows[r][3], values[3]);
  }
}

TEST(AggregateTest, RejectsMismatchedRuns) {
  CsvTable a{{}, {"t", "m"}, {{1, 0.5}}};
  CsvTable b{{}, {"t", "m"}, {{2, 0.5}}};
  EXPECT_THROW(Aggregate({a, b}), Error);
  EXPECT_THROW(Aggregate({}), Error);
}

TEST(MetricsRecorderTest, CadenceControlsRowCount) {
  const MarkovGame g = Builtin("const");
  const GroundTruth truth = ShapleySolve(g);
  RunConfig cfg;
  cfg.iterations = 100;
  cfg.eta = 0.05;
  MetricsRecorder rec(g, truth, {.cadence = 10});
  ExactEstimator est;
  RunSelfPlay(g, cfg, est, &rec);
  const CsvTable table = rec.Table({});
  ASSERT_EQ(table.rows.size(), 10u);
  EXPECT_EQ(table.columns, MetricsRecorder::Columns(false));
  EXPECT_EQ(table.rows.back()[0], 100.0);
}

TEST(MetricsRecorderTest, RowInvariantsAndBridgeOnRandomGames) {
  for (int trial = 0; trial < 4; ++trial) {
    const MarkovGame g = RandomGame(80 + trial, 3, 2, 3, trial % 2 ? 0.5 : 0.9);
    const GroundTruth truth = ShapleySolve(g);
    RunConfig cfg;
    cfg.iterations = 300;
    cfg.eta = 0.1;
    cfg.init = InitKind::kRandom;
    cfg.seed = trial;
    cfg.estimator.mode = trial < 2 ? EstimatorMode::kExact : EstimatorMode::kSampled;
    cfg.estimator.rollout_length = 300;
    auto est = MakeEstimator(cfg.estimator, g.gamma(), trial);
    MetricsRecorder rec(g, truth, {.cadence = 7, .estimator_error = true});
    RunSelfPlay(g, cfg, *est, &rec);
    const CsvTable table = rec.Table({});
    const int t = table.Column("t"), gap = table.Column("game_gap"),
              dist = table.Column("mean_dist_sq"), state_gap = table.Column("max_state_gap"),
              err = table.Column("est_error");
    double prev_t = 0.0;
    for (const auto& row : table.rows) {
      EXPECT_GT(row[t], prev_t);
      prev_t = row[t];
      EXPECT_GE(row[gap], -1e-9);
      EXPECT_GE(row[dist], -1e-9);
      EXPECT_GE(row[state_gap], -1e-9);
      EXPECT_LE(row[gap], 2.0 / (1.0 - g.gamma()) * row[state_gap] + 2 * truth.tolerance);
      if (trial < 2) {
        EXPECT_LE(row[err], 1e-15);
      }
    }
    EXPECT_EQ(rec.q_step_violations(), 0);
  }
}

TEST(MetricsRecorderTest, GapEveryStepAveragesAllIterations) {
  const MarkovGame g = RandomGame(90, 2, 2, 2, 0.9);
  const GroundTruth truth = ShapleySolve(g);
  RunConfig cfg;
  cfg.iterations = 40;
  cfg.eta = 0.1;
  cfg.init = InitKind::kRandom;
  MetricsRecorder every(g, truth, {.cadence = 1});
  MetricsRecorder sparse(g, truth, {.cadence = 10, .gap_every_step = true});
  ExactEstimator e1, e2;
  RunSelfPlay(g, cfg, e1, &every);
  RunSelfPlay(g, cfg, e2, &sparse);
  const int avg = every.Table({}).Column("avg_gap");
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(sparse.rows()[k][avg], every.rows()[10 * k + 9][avg]);
  }
}

TEST(MetricsRecorderTest, TimingAddsColumn) {
  EXPECT_EQ(MetricsRecorder::Columns(true).back(), "wall_ms");
  EXPECT_EQ(RationalityRecorder::Columns(true).back(), "wall_ms");
}

TEST(ExploitabilityTest, BestResponseHasZeroExploitability) {
  Rng rng(73);
  const MarkovGame g = RandomGame(91, 3, 3, 2, 0.9);
  const Policy y = RandomPolicy(3, 2, rng);
  const BestResponseResult br = BestResponse(g, y, Player::kTwo);
  EXPECT_NEAR(Exploitability(g, br.policy, y), 0.0, 1e-9);
  EXPECT_GE(Exploitability(g, RandomPolicy(3, 3, rng), y), -1e-9);
}

TEST(RationalityRecorderTest, LogsExploitability) {
  Rng rng(74);
  const MarkovGame g = RandomGame(92, 2, 2, 2, 0.9);
  const Policy y = RandomPolicy(2, 2, rng);
  const GroundTruth truth = ShapleySolve(ReduceGameForOpponent(g, y));
  RunConfig cfg;
  cfg.iterations = 50;
  cfg.eta = 0.1;
  RationalityRecorder rec(g, y, truth, {.cadence = 5});
  ExactEstimator est;
  const LearnerState st = RunSinglePlayer(g, y, cfg, est, &rec);
  const CsvTable table = rec.Table({});
  ASSERT_EQ(table.rows.size(), 10u);
  for (const auto& row : table.rows) EXPECT_GE(row[1], -1e-9);
  (void)st;
}

TEST(SvgPlotTest, DeterministicAndWellFormed) {
  CsvTable table{{}, {"t", "m"}, {{1, 1.0}, {10, 0.1}, {100, 0.01}, {1000, 0.0}}};
  const std::string a = PlotSvg({{"run", table}}, {"m"}, "title <x>");
  const std::string b = PlotSvg({{"run", table}}, {"m"}, "title <x>");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  EXPECT_NE(a.find("title &lt;x&gt;"), std::string::npos);
}

TEST(SvgPlotTest, RejectsEmptyInput) {
  CsvTable empty{{}, {"t", "m"}, {}};
  EXPECT_THROW(PlotSvg({{"run", empty}}, {"m"}, ""), Error);
  EXPECT_THROW(PlotSvg({}, {"m"}, ""), Error);
  CsvTable table{{}, {"t", "m"}, {{1, 1.0}}};
  EXPECT_THROW(PlotSvg({{"run", table}}, {}, ""), Error);
}

}  // namespace
}  // namespace ogda
