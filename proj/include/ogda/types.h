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

#ifndef OGDA_TYPES_H_
#define OGDA_TYPES_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogda {

// Base error for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-state real values, indexed by state.
using ValueVector = std::vector<double>;

// Small dense row-major matrix. Only what the per-state stage games need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}
  Matrix(int rows, int cols, std::vector<double> data);

  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }

  // max_{i,j} |A_ij|
  double MaxAbs() const;

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// ‖A − B‖ in the max-absolute-entry sense.
double MaxAbsDiff(const Matrix& a, const Matrix& b);

// Per-state stage-game matrices Q^s of shape |A|×|B|.
using QTable = std::vector<Matrix>;

// A stationary policy for one player: one action distribution per state,
// stored contiguously.
class Policy {
 public:
  Policy() = default;
  // Uniform over actions on every state.
  Policy(int num_states, int num_actions);
  Policy(int num_states, int num_actions, std::vector<double> probs);

  static Policy FromRows(const std::vector<std::vector<double>>& rows);
  // Point mass on `action` in every state.
  static Policy Pure(int num_states, int num_actions, const std::vector<int>& actions);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

  std::span<const double> operator[](int s) const {
    return {probs_.data() + static_cast<size_t>(s) * num_actions_,
            static_cast<size_t>(num_actions_)};
  }
  std::span<double> operator[](int s) {
    return {probs_.data() + static_cast<size_t>(s) * num_actions_,
            static_cast<size_t>(num_actions_)};
  }

  const std::vector<double>& data() const { return probs_; }
  std::vector<std::vector<double>> Rows() const;

  bool operator==(const Policy& other) const = default;

 private:
  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> probs_;
};

// Per-state pair (x^s, y^s).
struct JointPolicy {
  Policy x;
  Policy y;

  bool operator==(const JointPolicy& other) const = default;
};

// Checks nonnegativity and sum-to-one within `tol` on every state. Returns an
// empty string when valid, otherwise a description of the first violation.
std::string CheckDistribution(const Policy& policy, double tol = 1e-12);

// Squared Euclidean distance ‖u − v‖².
double SquaredDistance(std::span<const double> u, std::span<const double> v);

}  // namespace ogda

#endif  // OGDA_TYPES_H_
