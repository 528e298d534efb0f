// Copyright 2026 The mopbt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mopbt/core/types.hpp"
#include "mopbt/io/text.hpp"
#include "mopbt/metrics/curve.hpp"

namespace mopbt::io {

namespace detail {

struct Panel {
  double left, top, width, height;
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * width; }
  double py(double y) const { return top + height - (y - y_lo) / (y_hi - y_lo) * height; }
};

inline std::pair<double, double> padded_range(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 1.0};
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double a = *lo;
  double b = *hi;
  if (b - a <= 0.0) {
    a -= 0.5;
    b += 0.5;
  }
  const double pad = 0.05 * (b - a);
  return {a - pad, b + pad};
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

inline void axes(std::ostringstream& out, const Panel& p, const std::string& title,
                 const std::string& x_label, const std::string& y_label) {
  out << "<rect x='" << p.left << "' y='" << p.top << "' width='" << p.width
      << "' height='" << p.height << "' fill='none' stroke='#333'/>\n";
  out << "<text x='" << p.left + p.width / 2 << "' y='" << p.top - 10
      << "' text-anchor='middle' font-size='14'>" << title << "</text>\n";
  out << "<text x='" << p.left + p.width / 2 << "' y='" << p.top + p.height + 36
      << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
  out << "<text transform='translate(" << p.left - 46 << ',' << p.top + p.height / 2
      << ") rotate(-90)' text-anchor='middle' font-size='12'>" << y_label << "</text>\n";
  out << "<text x='" << p.left << "' y='" << p.top + p.height + 16
      << "' font-size='10'>" << fmt(p.x_lo) << "</text>\n";
  out << "<text x='" << p.left + p.width << "' y='" << p.top + p.height + 16
      << "' text-anchor='end' font-size='10'>" << fmt(p.x_hi) << "</text>\n";
  out << "<text x='" << p.left - 4 << "' y='" << p.top + p.height
      << "' text-anchor='end' font-size='10'>" << fmt(p.y_lo) << "</text>\n";
  out << "<text x='" << p.left - 4 << "' y='" << p.top + 10
      << "' text-anchor='end' font-size='10'>" << fmt(p.y_hi) << "</text>\n";
}

}  // namespace detail

/// One standalone SVG per run: the log hypervolume gap over simulated time
/// and, for two objectives, the run's non-dominated front.
inline std::string render_run_svg(const std::string& run_id,
                                  const std::vector<metrics::CurvePoint>& curve,
                                  const std::vector<ObjectiveVector>& front,
                                  const std::vector<std::string>& objective_names) {
  const bool show_front = objective_names.size() == 2;
  const double width = show_front ? 900 : 460;
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='380' font-family='sans-serif'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";

  std::vector<double> xs, ys;
  for (const auto& c : curve) {
    xs.push_back(c.time);
    ys.push_back(c.log_gap);
  }
  auto [x_lo, x_hi] = detail::padded_range(xs);
  auto [y_lo, y_hi] = detail::padded_range(ys);
  const detail::Panel gap{70, 40, 360, 280, x_lo, x_hi, y_lo, y_hi};
  detail::axes(out, gap, run_id + ": log10(HV* - HV)", "time (s)", "log10 gap");
  if (!curve.empty()) {
    out << "<polyline fill='none' stroke='#1f77b4' stroke-width='1.5' points='";
    for (const auto& c : curve) out << gap.px(c.time) << ',' << gap.py(c.log_gap) << ' ';
    out << "'/>\n";
  }

  if (show_front) {
    std::vector<double> fx, fy;
    for (const auto& p : front) {
      fx.push_back(p[0]);
      fy.push_back(p[1]);
    }
    auto [a_lo, a_hi] = detail::padded_range(fx);
    auto [b_lo, b_hi] = detail::padded_range(fy);
    const detail::Panel panel{510, 40, 360, 280, a_lo, a_hi, b_lo, b_hi};
    detail::axes(out, panel, run_id + ": non-dominated front", objective_names[0],
                 objective_names[1]);
    for (const auto& p : front) {
      out << "<circle cx='" << panel.px(p[0]) << "' cy='" << panel.py(p[1])
          << "' r='3' fill='#2ca02c'/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace mopbt::io
