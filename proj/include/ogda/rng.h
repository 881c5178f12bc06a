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

#ifndef OGDA_RNG_H_
#define OGDA_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ogda {

// Seeded generator with distribution code written out here rather than taken
// from <random>, whose distributions are implementation-defined. Streams are
// therefore identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Exponential() { return -std::log1p(-Uniform()); }

  // Index drawn from the distribution `probs` by inverse CDF.
  int Categorical(std::span<const double> probs) {
    const double u = Uniform();
    double cumulative = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
      cumulative += probs[i];
      if (u < cumulative) return static_cast<int>(i);
    }
    // Rounding left u above the total mass; fall back to the last support point.
    for (size_t i = probs.size(); i-- > 0;) {
      if (probs[i] > 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  // Uniform point of the (n−1)-simplex (Dirichlet(1,...,1)).
  std::vector<double> SimplexPoint(int n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) {
      v = Exponential();
      sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
  }

  uint64_t NextU64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ogda

#endif  // OGDA_RNG_H_
