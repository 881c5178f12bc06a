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

#include "ogda/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "ogda/estimator.h"
#include "ogda/game_io.h"

namespace ogda {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double MaxQDiff(const QTable& a, const QTable& b) {
  double m = 0.0;
  for (size_t s = 0; s < a.size(); ++s) m = std::max(m, MaxAbsDiff(a[s], b[s]));
  return m;
}

double MaxEstimateError(const EstimateTriple& got, const EstimateTriple& exact) {
  double m = 0.0;
  for (size_t s = 0; s < exact.rho.size(); ++s) {
    for (size_t i = 0; i < exact.ell[s].size(); ++i) {
      m = std::max(m, std::abs(got.ell[s][i] - exact.ell[s][i]));
    }
    for (size_t i = 0; i < exact.r[s].size(); ++i) {
      m = std::max(m, std::abs(got.r[s][i] - exact.r[s][i]));
    }
    m = std::max(m, std::abs(got.rho[s] - exact.rho[s]));
  }
  return m;
}

std::vector<std::string> SplitComma(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Diagnostics DiagnosticsUpdate(const Diagnostics& previous, const JointPolicy& z,
                              const JointPolicy& z_prev, const QTable& q, const QTable& q_prev,
                              double alpha) {
  const int S = z.x.num_states();
  Diagnostics next;
  next.j.resize(S);
  next.k.resize(S);
  for (int s = 0; s < S; ++s) {
    const double path = SquaredDistance(z.x[s], z_prev.x[s]) + SquaredDistance(z.y[s], z_prev.y[s]);
    const double q_diff = MaxAbsDiff(q[s], q_prev[s]);
    const double j_prev = previous.j.empty() ? 0.0 : previous.j[s];
    const double k_prev = previous.k.empty() ? 0.0 : previous.k[s];
    next.j[s] = (1.0 - alpha) * j_prev + alpha * path;
    next.k[s] = (1.0 - alpha) * k_prev + alpha * q_diff * q_diff;
  }
  next.j_max = *std::max_element(next.j.begin(), next.j.end());
  next.k_max = *std::max_element(next.k.begin(), next.k.end());
  return next;
}

JointPolicy ZeroPolicyLike(const JointPolicy& z) {
  return {Policy(z.x.num_states(), z.x.num_actions(), std::vector<double>(z.x.data().size(), 0.0)),
          Policy(z.y.num_states(), z.y.num_actions(), std::vector<double>(z.y.data().size(), 0.0))};
}

QTable ZeroQLike(const QTable& q) {
  QTable zero;
  for (const Matrix& m : q) zero.emplace_back(m.rows(), m.cols());
  return zero;
}

int CsvTable::Column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  throw Error(fmt::format("CSV has no column '{}'", name));
}

std::vector<double> CsvTable::ColumnValues(const std::string& name) const {
  const int c = Column(name);
  std::vector<double> out;
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

std::string WriteCsv(const CsvTable& table) {
  std::string out;
  for (const auto& m : table.metadata) out += "# " + m + "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ",";
    out += table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ",";
      out += FormatDouble(row[i]);
    }
    out += "\n";
  }
  return out;
}

CsvTable ParseCsv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.metadata.push_back(line.size() > 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    std::vector<std::string> cells = SplitComma(line);
    if (table.columns.empty()) {
      table.columns = std::move(cells);
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw Error(fmt::format("CSV line {}: {} cells, header has {}", line_no, cells.size(),
                              table.columns.size()));
    }
    std::vector<double> row;
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw Error(fmt::format("CSV line {}: cannot parse '{}'", line_no, cell));
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

double Quantile(std::vector<double> values, double p) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

CsvTable Aggregate(const std::vector<CsvTable>& runs) {
  if (runs.empty()) throw Error("Aggregate: no runs");
  const CsvTable& first = runs.front();
  for (const auto& run : runs) {
    if (run.columns != first.columns || run.rows.size() != first.rows.size()) {
      throw Error("Aggregate: runs have different shapes");
    }
  }
  const int t_col = first.Column("t");
  CsvTable out;
  out.metadata.push_back(fmt::format("schema: {}-aggregate", kMetricsSchema));
  out.metadata.push_back(fmt::format("repetitions: {}", runs.size()));
  out.columns.push_back("t");
  for (size_t c = 0; c < first.columns.size(); ++c) {
    if (static_cast<int>(c) == t_col) continue;
    out.columns.push_back(first.columns[c] + "_median");
    out.columns.push_back(first.columns[c] + "_q1");
    out.columns.push_back(first.columns[c] + "_q3");
  }
  for (size_t r = 0; r < first.rows.size(); ++r) {
    const double t = first.rows[r][t_col];
    std::vector<double> row{t};
    for (const auto& run : runs) {
      if (run.rows[r][t_col] != t) throw Error("Aggregate: runs log different iterations");
    }
    for (size_t c = 0; c < first.columns.size(); ++c) {
      if (static_cast<int>(c) == t_col) continue;
      std::vector<double> values;
      for (const auto& run : runs) values.push_back(run.rows[r][c]);
      row.push_back(Quantile(values, 0.5));
      row.push_back(Quantile(values, 0.25));
      row.push_back(Quantile(values, 0.75));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

MetricsRecorder::MetricsRecorder(const MarkovGame& game, const GroundTruth& truth,
                                 RecorderOptions options)
    : game_(game), truth_(truth), options_(options), start_(std::chrono::steady_clock::now()) {
  if (options_.cadence < 1) throw Error("MetricsRecorder: cadence must be ≥ 1");
}

std::vector<std::string> MetricsRecorder::Columns(bool timing) {
  std::vector<std::string> cols = {"t",       "game_gap", "avg_gap", "mean_dist_sq",
                                   "max_state_gap", "gamma_t",  "j_t",     "k_t",
                                   "q_step",  "q_step_bound", "est_error"};
  if (timing) cols.push_back("wall_ms");
  return cols;
}

void MetricsRecorder::Observe(const IterationView& view) {
  const LearnerState& state = view.state;
  const JointPolicy current = state.Current();
  if (view.t == 1) {
    prev_z_ = ZeroPolicyLike(current);
    prev_q_ = ZeroQLike(view.q);
    prev_alpha_ = 1.0;
  }
  diagnostics_ = DiagnosticsUpdate(diagnostics_, current, prev_z_, view.q, prev_q_, view.alpha);
  const double gamma = game_.gamma();
  const double q_step = MaxQDiff(view.q, prev_q_);
  const double q_bound = gamma * prev_alpha_ / (1.0 - gamma);
  if (q_step > q_bound) ++q_step_violations_;

  const bool logged = view.t % options_.cadence == 0;
  const JointPolicy hat = state.Hat();
  double game_gap = kNaN;
  if (options_.gap_every_step || logged) {
    game_gap = GameDualityGap(game_, hat);
    gap_sum_ += game_gap;
    ++gap_count_;
  }
  if (logged) {
    const OptimalSetDistance dist = DistToOptimalSets(truth_, hat);
    const std::vector<double> state_gaps = StateDualityGaps(truth_, hat);
    double gamma_t = 0.0;
    for (size_t s = 0; s < view.q.size(); ++s) {
      gamma_t = std::max(gamma_t, MaxAbsDiff(view.q[s], truth_.q_star[s]));
    }
    double est_error = kNaN;
    if (options_.estimator_error) {
      est_error = MaxEstimateError(view.estimate, ExactEstimates(view.q, current));
    }
    std::vector<double> row = {static_cast<double>(view.t),
                               game_gap,
                               gap_sum_ / gap_count_,
                               dist.mean,
                               *std::max_element(state_gaps.begin(), state_gaps.end()),
                               gamma_t,
                               diagnostics_.j_max,
                               diagnostics_.k_max,
                               q_step,
                               q_bound,
                               est_error};
    if (options_.timing) {
      row.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start_)
                        .count());
    }
    rows_.push_back(std::move(row));
  }
  prev_z_ = current;
  prev_q_ = view.q;
  prev_alpha_ = view.alpha;
}

CsvTable MetricsRecorder::Table(std::vector<std::string> metadata) const {
  CsvTable table;
  table.metadata = std::move(metadata);
  table.columns = Columns(options_.timing);
  table.rows = rows_;
  return table;
}

double Exploitability(const MarkovGame& game, const Policy& x, const Policy& y) {
  const ValueVector v = EvaluatePolicyPair(game, {x, y});
  const ValueVector best = BestResponse(game, y, Player::kTwo).value;
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < v.size(); ++s) worst = std::max(worst, v[s] - best[s]);
  return worst;
}

RationalityRecorder::RationalityRecorder(const MarkovGame& game, const Policy& opponent,
                                         const GroundTruth& reduced_truth, RecorderOptions options)
    : game_(game),
      opponent_(opponent),
      truth_(reduced_truth),
      options_(options),
      best_response_value_(BestResponse(game, opponent, Player::kTwo).value),
      start_(std::chrono::steady_clock::now()) {
  if (options_.cadence < 1) throw Error("RationalityRecorder: cadence must be ≥ 1");
}

std::vector<std::string> RationalityRecorder::Columns(bool timing) {
  std::vector<std::string> cols = {"t",       "exploitability", "avg_exploitability",
                                   "mean_br_dist_sq", "gamma_t",  "j_t", "k_t"};
  if (timing) cols.push_back("wall_ms");
  return cols;
}

void RationalityRecorder::Observe(const IterationView& view) {
  const JointPolicy current = view.state.Current();
  if (view.t == 1) {
    prev_z_ = ZeroPolicyLike(current);
    prev_q_ = ZeroQLike(view.q);
  }
  diagnostics_ = DiagnosticsUpdate(diagnostics_, current, prev_z_, view.q, prev_q_, view.alpha);
  const bool logged = view.t % options_.cadence == 0;
  double exploitability = kNaN;
  if (options_.gap_every_step || logged) {
    const ValueVector v = EvaluatePolicyPair(game_, {view.state.x_hat, opponent_});
    exploitability = -std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < v.size(); ++s) {
      exploitability = std::max(exploitability, v[s] - best_response_value_[s]);
    }
    sum_ += exploitability;
    ++count_;
  }
  if (logged) {
    const std::vector<double> dist = DistToOptimalSetsX(truth_, view.state.x_hat);
    double mean = 0.0;
    for (double d : dist) mean += d;
    mean /= static_cast<double>(dist.size());
    double gamma_t = 0.0;
    for (size_t s = 0; s < view.q.size(); ++s) {
      gamma_t = std::max(gamma_t, MaxAbsDiff(view.q[s], truth_.q_star[s]));
    }
    std::vector<double> row = {static_cast<double>(view.t), exploitability, sum_ / count_, mean,
                               gamma_t, diagnostics_.j_max, diagnostics_.k_max};
    if (options_.timing) {
      row.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start_)
                        .count());
    }
    rows_.push_back(std::move(row));
  }
  prev_z_ = current;
  prev_q_ = view.q;
}

CsvTable RationalityRecorder::Table(std::vector<std::string> metadata) const {
  CsvTable table;
  table.metadata = std::move(metadata);
  table.columns = Columns(options_.timing);
  table.rows = rows_;
  return table;
}

}  // namespace ogda
