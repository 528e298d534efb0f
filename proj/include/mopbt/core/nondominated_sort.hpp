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
#include <span>
#include <vector>

#include "mopbt/core/dominance.hpp"
#include "mopbt/core/types.hpp"

namespace mopbt::core {

/// Ordered non-dominated fronts over a population of indices. Indices inside
/// each front are kept in ascending order.
struct FrontPartition {
  std::vector<std::vector<std::size_t>> fronts;

  std::size_t size() const noexcept { return fronts.size(); }

  std::size_t population_size() const noexcept {
    std::size_t n = 0;
    for (const auto& front : fronts) n += front.size();
    return n;
  }

  /// Front number (0-based) of every index.
  std::vector<std::size_t> rank_of() const {
    std::vector<std::size_t> rank(population_size());
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      for (std::size_t i : fronts[f]) rank[i] = f;
    }
    return rank;
  }

  friend bool operator==(const FrontPartition&,
                         const FrontPartition&) = default;
};

/// Deb's fast non-dominated sort over `n` items under an arbitrary strict
/// partial order `dom(i, j)` ("i dominates j"). O(n^2) relation calls.
template <typename Relation>
FrontPartition non_dominated_sort_by(std::size_t n, Relation&& dom) {
  require(n > 0, "non-dominated sort needs a non-empty population");
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominator_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dom(i, j)) {
        dominated[i].push_back(j);
        ++dominator_count[j];
      } else if (dom(j, i)) {
        dominated[j].push_back(i);
        ++dominator_count[i];
      }
    }
  }

  FrontPartition partition;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominator_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--dominator_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    partition.fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return partition;
}

/// Partition `population` into non-dominated fronts. When `constraints` is
/// non-empty, constraint domination replaces plain domination.
inline FrontPartition non_dominated_sort(
    std::span<const ObjectiveVector> population,
    std::span<const ConstraintStatus> constraints = {}) {
  require(!population.empty(), "non-dominated sort needs a non-empty population");
  const std::size_t k = population.front().size();
  for (const auto& f : population) {
    require(f.size() == k, "population mixes objective counts");
  }
  if (constraints.empty()) {
    return non_dominated_sort_by(population.size(), [&](std::size_t i,
                                                        std::size_t j) {
      return dominates(population[i], population[j]);
    });
  }
  require(constraints.size() == population.size(),
          "constraint list must match population size");
  return non_dominated_sort_by(population.size(), [&](std::size_t i,
                                                      std::size_t j) {
    return constraint_dominates(population[i], constraints[i], population[j],
                                constraints[j]);
  });
}

}  // namespace mopbt::core
