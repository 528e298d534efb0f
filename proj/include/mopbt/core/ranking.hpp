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
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "mopbt/core/nondominated_sort.hpp"
#include "mopbt/core/types.hpp"

namespace mopbt::core {

namespace detail {

inline void check_partition(const FrontPartition& fronts,
                            std::span<const ObjectiveVector> objectives) {
  std::vector<bool> seen(objectives.size(), false);
  std::size_t count = 0;
  for (const auto& front : fronts.fronts) {
    for (std::size_t i : front) {
      require(i < objectives.size(), "front index out of range");
      require(!seen[i], "front index appears twice");
      seen[i] = true;
      ++count;
    }
  }
  require(count == objectives.size(), "partition does not cover population");
}

inline std::vector<std::vector<double>> min_max_normalized(
    std::span<const ObjectiveVector> objectives) {
  const std::size_t k = objectives.empty() ? 0 : objectives.front().size();
  std::vector<double> lo(k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
  for (const auto& f : objectives) {
    for (std::size_t d = 0; d < k; ++d) {
      lo[d] = std::min(lo[d], f[d]);
      hi[d] = std::max(hi[d], f[d]);
    }
  }
  std::vector<std::vector<double>> out;
  out.reserve(objectives.size());
  for (const auto& f : objectives) {
    std::vector<double> p(k);
    for (std::size_t d = 0; d < k; ++d) {
      const double range = hi[d] - lo[d];
      p[d] = range > 0.0 ? (f[d] - lo[d]) / range : 0.0;
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace detail

struct GreedySubsetOptions {
  // Off by default: distances are taken in raw objective space.
  bool normalize = false;
};

/// Greedy scattered subset selection (epsilon-network) ranking.
///
/// The largest-f1 member of the first front is emitted first. After that,
/// fronts are processed in order and each next member is the one whose
/// distance to the closest already-emitted solution (from any front) is
/// largest. Ties go to the lowest index.
inline std::vector<std::size_t> greedy_scattered_subset_order(
    const FrontPartition& fronts, std::span<const ObjectiveVector> objectives,
    GreedySubsetOptions options = {}) {
  detail::check_partition(fronts, objectives);
  const std::size_t n = objectives.size();
  std::vector<std::size_t> order;
  if (n == 0) return order;
  order.reserve(n);

  std::vector<std::vector<double>> points;
  if (options.normalize) {
    points = detail::min_max_normalized(objectives);
  } else {
    points.reserve(n);
    for (const auto& f : objectives) points.push_back(f.values());
  }

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  auto emit = [&](std::size_t chosen) {
    order.push_back(chosen);
    for (std::size_t j = 0; j < n; ++j) {
      nearest[j] = std::min(nearest[j], detail::euclidean(points[j], points[chosen]));
    }
  };

  for (std::size_t f = 0; f < fronts.fronts.size(); ++f) {
    std::vector<std::size_t> remaining = fronts.fronts[f];
    std::sort(remaining.begin(), remaining.end());
    if (f == 0 && !remaining.empty()) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < remaining.size(); ++c) {
        if (objectives[remaining[c]][0] > objectives[remaining[best]][0]) best = c;
      }
      emit(remaining[best]);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    while (!remaining.empty()) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < remaining.size(); ++c) {
        if (nearest[remaining[c]] > nearest[remaining[best]]) best = c;
      }
      emit(remaining[best]);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }
  return order;
}

/// NSGA-II crowding distance of every member of `front`, aligned with the
/// order of `front`. Boundary members get +infinity; fronts of size <= 2
/// are all boundary.
inline std::vector<double> crowding_distances(
    std::span<const std::size_t> front,
    std::span<const ObjectiveVector> objectives) {
  const std::size_t m = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(m, 0.0);
  if (m <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  const std::size_t k = objectives[front[0]].size();
  std::vector<std::size_t> by_value(m);
  for (std::size_t d = 0; d < k; ++d) {
    std::iota(by_value.begin(), by_value.end(), std::size_t{0});
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t a, std::size_t b) {
                       return objectives[front[a]][d] < objectives[front[b]][d];
                     });
    const double lo = objectives[front[by_value.front()]][d];
    const double hi = objectives[front[by_value.back()]][d];
    distance[by_value.front()] = inf;
    distance[by_value.back()] = inf;
    const double range = hi - lo;
    if (range <= 0.0) continue;
    for (std::size_t r = 1; r + 1 < m; ++r) {
      const double gap = objectives[front[by_value[r + 1]]][d] -
                         objectives[front[by_value[r - 1]]][d];
      distance[by_value[r]] += gap / range;
    }
  }
  return distance;
}

/// Fronts in order, descending crowding distance inside each front, ties by
/// lowest index.
inline std::vector<std::size_t> crowding_distance_order(
    const FrontPartition& fronts, std::span<const ObjectiveVector> objectives) {
  detail::check_partition(fronts, objectives);
  std::vector<std::size_t> order;
  order.reserve(objectives.size());
  for (const auto& unsorted : fronts.fronts) {
    std::vector<std::size_t> front = unsorted;
    std::sort(front.begin(), front.end());
    const auto distance = crowding_distances(front, objectives);
    std::vector<std::size_t> pos(front.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
      return distance[a] > distance[b];
    });
    for (std::size_t p : pos) order.push_back(front[p]);
  }
  return order;
}

}  // namespace mopbt::core
