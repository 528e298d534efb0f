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
#include <utility>

#include "mopbt/core/types.hpp"

namespace mopbt::core {

/// True iff `a` is at least as good as `b` in every objective and strictly
/// better in at least one.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require(!a.empty(), "objective vectors must be non-empty");
  require(a.size() == b.size(), "objective vectors differ in length");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly_better = true;
  }
  return strictly_better;
}

/// Feasible beats infeasible, two feasibles compare by plain domination and
/// two infeasibles by strictly smaller violation.
inline bool constraint_dominates(const ObjectiveVector& a,
                                 const ConstraintStatus& ca,
                                 const ObjectiveVector& b,
                                 const ConstraintStatus& cb) {
  require(a.size() == b.size(), "objective vectors differ in length");
  if (ca.feasible && cb.feasible) return dominates(a, b);
  if (ca.feasible != cb.feasible) return ca.feasible;
  return ca.violation < cb.violation;
}

inline bool constraint_dominates(
    const std::pair<ObjectiveVector, ConstraintStatus>& a,
    const std::pair<ObjectiveVector, ConstraintStatus>& b) {
  return constraint_dominates(a.first, a.second, b.first, b.second);
}

}  // namespace mopbt::core
