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
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "mopbt/core/types.hpp"
#include "mopbt/metrics/hypervolume.hpp"
#include "mopbt/metrics/pareto.hpp"

namespace mopbt::metrics {

inline constexpr std::size_t kDefaultCoverageLines = 360;

/// Sector index of a point translated by -r, for `sectors` equal angular
/// sectors over [0, 90] degrees. A point on a boundary goes to the
/// lower-angle sector.
inline std::size_t coverage_sector(double dx, double dy, std::size_t sectors) {
  const double angle = std::atan2(dy, dx);
  const double width = (std::numbers::pi / 2.0) / static_cast<double>(sectors);
  const double scaled = angle / width;
  const double up = std::ceil(scaled);
  std::size_t index = up <= 0.0 ? 0 : static_cast<std::size_t>(up) - 1;
  return std::min(index, sectors - 1);
}

/// Fraction of the M + 1 equal-angle sectors of the quadrant above `r` that
/// contain at least one non-dominated point. Bi-objective only.
inline double coverage(std::span<const ObjectiveVector> points,
                       const ReferencePoint& r,
                       std::size_t lines = kDefaultCoverageLines) {
  if (r.size() != 2) throw UnsupportedError("coverage is defined for K = 2 only");
  for (const auto& p : points) {
    require(p.size() == 2, "coverage needs bi-objective points");
  }
  const std::size_t sectors = lines + 1;
  std::vector<bool> occupied(sectors, false);
  for (const auto& p : pareto_filter(points)) {
    const double dx = p[0] - r[0];
    const double dy = p[1] - r[1];
    if (!(dx > 0.0 && dy > 0.0)) continue;
    occupied[coverage_sector(dx, dy, sectors)] = true;
  }
  const auto hit = static_cast<double>(std::count(occupied.begin(), occupied.end(), true));
  return hit / static_cast<double>(sectors);
}

}  // namespace mopbt::metrics
