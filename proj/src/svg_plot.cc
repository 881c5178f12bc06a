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

#include "ogda/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace ogda {
namespace {

constexpr double kPanelWidth = 640.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 40.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string FormatTick(double t) { return fmt::format("{:.0f}", t); }

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string PlotSvg(const std::vector<PlotSeries>& series, const std::vector<std::string>& columns,
                    const std::string& title) {
  if (series.empty()) throw Error("PlotSvg: no input series");
  if (columns.empty()) throw Error("PlotSvg: no columns selected");
  for (const auto& s : series) {
    if (s.table.rows.empty()) throw Error(fmt::format("PlotSvg: '{}' has no data rows", s.label));
  }
  const double height = kMarginTop + columns.size() * (kPanelHeight + kMarginTop);
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kPanelWidth, height);
  out += fmt::format("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  out += fmt::format("<text x=\"{:.1f}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
                     kPanelWidth / 2, Escape(title));

  for (size_t panel = 0; panel < columns.size(); ++panel) {
    const std::string& column = columns[panel];
    const double top = kMarginTop + panel * (kPanelHeight + kMarginTop) + kMarginTop;
    const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
    const double plot_h = kPanelHeight - kMarginBottom;

    double t_min = std::numeric_limits<double>::infinity(), t_max = -t_min;
    double y_min = t_min, y_max = -t_min;
    for (const auto& s : series) {
      const auto ts = s.table.ColumnValues("t");
      const auto ys = s.table.ColumnValues(column);
      for (size_t i = 0; i < ts.size(); ++i) {
        t_min = std::min(t_min, ts[i]);
        t_max = std::max(t_max, ts[i]);
        if (std::isfinite(ys[i]) && ys[i] > 0.0) {
          y_min = std::min(y_min, ys[i]);
          y_max = std::max(y_max, ys[i]);
        }
      }
    }
    double lo = std::isfinite(y_min) ? std::floor(std::log10(y_min)) : 0.0;
    double hi = std::isfinite(y_max) ? std::ceil(std::log10(y_max)) : 1.0;
    if (hi <= lo) hi = lo + 1.0;
    if (t_max <= t_min) t_max = t_min + 1.0;
    auto px = [&](double t) { return kMarginLeft + (t - t_min) / (t_max - t_min) * plot_w; };
    auto py = [&](double v) { return top + (hi - std::log10(v)) / (hi - lo) * plot_h; };

    out += fmt::format("<g>\n<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{} (log scale)</text>\n",
                       kPanelWidth / 2, top - 10, Escape(column));
    out += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
        "stroke=\"black\"/>\n",
        kMarginLeft, top, plot_w, plot_h);
    for (double d = lo; d <= hi + 1e-9; d += 1.0) {
      const double y = top + (hi - d) / (hi - lo) * plot_h;
      out += fmt::format(
          "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#dddddd\"/>\n"
          "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">1e{:.0f}</text>\n",
          kMarginLeft, y, kMarginLeft + plot_w, y, kMarginLeft - 6, y + 4, d);
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"start\">{}</text>\n",
                       kMarginLeft, top + plot_h + 16, FormatTick(t_min));
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n",
                       kMarginLeft + plot_w, top + plot_h + 16, FormatTick(t_max));
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">t</text>\n",
                       kMarginLeft + plot_w / 2, top + plot_h + 30);

    for (size_t k = 0; k < series.size(); ++k) {
      const auto ts = series[k].table.ColumnValues("t");
      const auto ys = series[k].table.ColumnValues(column);
      std::string points;
      for (size_t i = 0; i < ts.size(); ++i) {
        if (!std::isfinite(ys[i]) || ys[i] <= 0.0) continue;
        points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", px(ts[i]), py(ys[i]));
      }
      const char* color = kPalette[k % std::size(kPalette)];
      if (!points.empty()) {
        out += fmt::format(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color,
            points);
      }
      out += fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" fill=\"{}\" text-anchor=\"end\">{}</text>\n",
          kMarginLeft + plot_w - 6, top + 16 + 14 * k, color, Escape(series[k].label));
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace ogda
