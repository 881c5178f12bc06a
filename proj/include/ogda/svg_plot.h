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

#ifndef OGDA_SVG_PLOT_H_
#define OGDA_SVG_PLOT_H_

#include <string>
#include <utility>
#include <vector>

#include "ogda/metrics.h"

namespace ogda {

struct PlotSeries {
  std::string label;
  CsvTable table;
};

// Static SVG with one log-y line chart per requested column; every series
// contributes one line per chart, plotted against its "t" column. Points
// that are not finite and positive are skipped. Output is a pure function of
// the inputs.
std::string PlotSvg(const std::vector<PlotSeries>& series, const std::vector<std::string>& columns,
                    const std::string& title);

}  // namespace ogda

#endif  // OGDA_SVG_PLOT_H_
