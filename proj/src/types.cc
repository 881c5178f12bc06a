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

#include "ogda/types.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ogda {

Matrix::Matrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0 || data_.size() != static_cast<size_t>(rows) * cols) {
    throw Error(fmt::format("Matrix: {}x{} shape does not match {} entries", rows, cols,
                            data_.size()));
  }
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  std::vector<double> data;
  data.reserve(static_cast<size_t>(r) * c);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw Error("Matrix::FromRows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

double Matrix::MaxAbs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("MaxAbsDiff: shape mismatch");
  }
  double m = 0.0;
  for (size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

Policy::Policy(int num_states, int num_actions)
    : num_states_(num_states),
      num_actions_(num_actions),
      probs_(static_cast<size_t>(num_states) * num_actions, 1.0 / num_actions) {}

Policy::Policy(int num_states, int num_actions, std::vector<double> probs)
    : num_states_(num_states), num_actions_(num_actions), probs_(std::move(probs)) {
  if (probs_.size() != static_cast<size_t>(num_states) * num_actions) {
    throw Error(fmt::format("Policy: expected {} entries, got {}",
                            static_cast<size_t>(num_states) * num_actions, probs_.size()));
  }
}

Policy Policy::FromRows(const std::vector<std::vector<double>>& rows) {
  const int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::vector<double> probs;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw Error("Policy::FromRows: ragged rows");
    probs.insert(probs.end(), row.begin(), row.end());
  }
  return Policy(static_cast<int>(rows.size()), n, std::move(probs));
}

Policy Policy::Pure(int num_states, int num_actions, const std::vector<int>& actions) {
  if (static_cast<int>(actions.size()) != num_states) {
    throw Error("Policy::Pure: one action per state required");
  }
  Policy p(num_states, num_actions, std::vector<double>(static_cast<size_t>(num_states) * num_actions, 0.0));
  for (int s = 0; s < num_states; ++s) p[s][actions[s]] = 1.0;
  return p;
}

std::vector<std::vector<double>> Policy::Rows() const {
  std::vector<std::vector<double>> rows;
  for (int s = 0; s < num_states_; ++s) {
    auto r = (*this)[s];
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

std::string CheckDistribution(const Policy& policy, double tol) {
  for (int s = 0; s < policy.num_states(); ++s) {
    double sum = 0.0;
    for (int a = 0; a < policy.num_actions(); ++a) {
      const double p = policy[s][a];
      if (!std::isfinite(p) || p < 0.0) {
        return fmt::format("state {} action {}: invalid probability {}", s, a, p);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      return fmt::format("state {}: probabilities sum to {:.17g}", s, sum);
    }
  }
  return {};
}

double SquaredDistance(std::span<const double> u, std::span<const double> v) {
  double d = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double diff = u[i] - v[i];
    d += diff * diff;
  }
  return d;
}

}  // namespace ogda
