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

#ifndef OGDA_ESTIMATE_H_
#define OGDA_ESTIMATE_H_

#include <vector>

#include "ogda/game.h"
#include "ogda/types.h"

namespace ogda {

// Approximations of Q_t^s y_t^s (ell), Q_t^{sT} x_t^s (r) and
// x_t^{sT} Q_t^s y_t^s (rho), one entry per state.
struct EstimateTriple {
  std::vector<std::vector<double>> ell;
  std::vector<std::vector<double>> r;
  std::vector<double> rho;

  bool operator==(const EstimateTriple& other) const = default;
};

// Source of the gradient estimates consumed by the learner each iteration.
class Estimator {
 public:
  virtual ~Estimator() = default;

  // `q` is Q_t = QFromV(game, v_prev); `policy` is the pair (x_t, y_t).
  virtual EstimateTriple Estimate(const MarkovGame& game, const QTable& q,
                                  const ValueVector& v_prev, const JointPolicy& policy) = 0;

  // Accuracy budget ε the estimates are meant to honour; 0 for exact ones.
  virtual double epsilon() const = 0;
};

}  // namespace ogda

#endif  // OGDA_ESTIMATE_H_
