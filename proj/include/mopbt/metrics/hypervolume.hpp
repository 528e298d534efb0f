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
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mopbt/core/types.hpp"

namespace mopbt::metrics {

/// A reference point strictly worse than every point of interest.
struct ReferencePoint {
  ObjectiveVector r;

  std::size_t size() const noexcept { return r.size(); }
  double operator[](std::size_t i) const { return r[i]; }
};

namespace detail {

// Area of the union of boxes [0, p] for points with positive coordinates.
inline double area_2d(std::vector<std::array<double, 2>> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] > b[0] : a[1] > b[1];
  });
  double area = 0.0;
  double covered_y = 0.0;
  for (const auto& p : pts) {
    if (p[1] > covered_y) {
      area += p[0] * (p[1] - covered_y);
      covered_y = p[1];
    }
  }
  return area;
}

}  // namespace detail

/// Exact dominated hypervolume of `points` with respect to `r` for K <= 3.
///
/// Only points that strictly dominate `r` in every coordinate contribute.
/// K = 2 is a sort-and-sweep; K = 3 sweeps z-slices top down and multiplies
/// each slice's 2D area by its thickness.
inline double hypervolume(std::span<const ObjectiveVector> points,
                          const ReferencePoint& r) {
  const std::size_t k = r.size();
  require(k >= 1, "reference point must be non-empty");
  if (k > 3) throw UnsupportedError("hypervolume is only implemented for K <= 3");

  std::vector<std::array<double, 3>> shifted;
  for (const auto& p : points) {
    require(p.size() == k, "point and reference point differ in length");
    std::array<double, 3> s{0.0, 0.0, 0.0};
    bool inside = true;
    for (std::size_t i = 0; i < k; ++i) {
      s[i] = p[i] - r[i];
      if (!(s[i] > 0.0)) inside = false;
    }
    if (inside) shifted.push_back(s);
  }
  if (shifted.empty()) return 0.0;

  if (k == 1) {
    double best = 0.0;
    for (const auto& s : shifted) best = std::max(best, s[0]);
    return best;
  }
  if (k == 2) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(shifted.size());
    for (const auto& s : shifted) pts.push_back({s[0], s[1]});
    return detail::area_2d(std::move(pts));
  }

  std::sort(shifted.begin(), shifted.end(),
            [](const auto& a, const auto& b) { return a[2] > b[2]; });
  double volume = 0.0;
  std::vector<std::array<double, 2>> slice;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    slice.push_back({shifted[i][0], shifted[i][1]});
    const double next_z = i + 1 < shifted.size() ? shifted[i + 1][2] : 0.0;
    const double thickness = shifted[i][2] - next_z;
    if (thickness > 0.0) volume += detail::area_2d(slice) * thickness;
  }
  return volume;
}

}  // namespace mopbt::metrics
