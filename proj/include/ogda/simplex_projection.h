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

#ifndef OGDA_SIMPLEX_PROJECTION_H_
#define OGDA_SIMPLEX_PROJECTION_H_

#include <span>
#include <vector>

namespace ogda {

// Euclidean projection onto the probability simplex by sort-and-threshold.
std::vector<double> ProjectSimplex(std::span<const double> v);

}  // namespace ogda

#endif  // OGDA_SIMPLEX_PROJECTION_H_
