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

#include "ogda/simplex_projection.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ogda/types.h"

namespace ogda {

std::vector<double> ProjectSimplex(std::span<const double> v) {
  const size_t n = v.size();
  if (n == 0) throw Error("ProjectSimplex: empty vector");
  for (double e : v) {
    if (!std::isfinite(e)) throw Error("ProjectSimplex: non-finite entry");
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // θ = (Σ_{i≤k} u_i − 1)/k for the largest k with u_k − θ_k > 0.
  double cumulative = 0.0;
  double theta = 0.0;
  for (size_t k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

}  // namespace ogda
