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

#include <cstddef>
#include <span>
#include <vector>

#include "mopbt/core/dominance.hpp"
#include "mopbt/core/types.hpp"

namespace mopbt::metrics {

/// Indices of the points not dominated by any other point. Of several equal
/// non-dominated points only the first is kept. Input order is preserved.
inline std::vector<std::size_t> pareto_filter_indices(
    std::span<const ObjectiveVector> points) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (j == i) continue;
      if (core::dominates(points[j], points[i])) keep = false;
      else if (j < i && points[j] == points[i]) keep = false;
    }
    if (keep) kept.push_back(i);
  }
  return kept;
}

inline std::vector<ObjectiveVector> pareto_filter(
    std::span<const ObjectiveVector> points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i : pareto_filter_indices(points)) out.push_back(points[i]);
  return out;
}

/// Incrementally maintained non-dominated set.
class ParetoSet {
 public:
  /// Returns true when `p` entered the set.
  bool insert(const ObjectiveVector& p) {
    for (const auto& q : points_) {
      if (q == p || core::dominates(q, p)) return false;
    }
    std::erase_if(points_, [&](const ObjectiveVector& q) { return core::dominates(p, q); });
    points_.push_back(p);
    return true;
  }

  const std::vector<ObjectiveVector>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<ObjectiveVector> points_;
};

}  // namespace mopbt::metrics
