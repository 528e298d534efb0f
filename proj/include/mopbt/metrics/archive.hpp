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
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mopbt/core/types.hpp"
#include "mopbt/metrics/hypervolume.hpp"
#include "mopbt/metrics/pareto.hpp"
#include "mopbt/run_log.hpp"

namespace mopbt::metrics {

struct ArchivedPoint {
  std::string run_id;
  double t = 0.0;
  std::uint64_t step = 0;
  std::size_t sol = 0;
  ObjectiveVector f;
};

/// Every evaluated point of every run, with provenance.
class FrontArchive {
 public:
  void add(ArchivedPoint p) { points_.push_back(std::move(p)); }

  /// Adds every evaluation event of `log` under `run_id`.
  void add_run(const std::string& run_id, const RunLog& log) {
    for (const auto& e : log.events()) {
      if (e.kind != EventKind::kEval) continue;
      add({run_id, e.t, e.step, e.sol, ObjectiveVector(e.f)});
    }
  }

  void merge(const FrontArchive& other) {
    points_.insert(points_.end(), other.points_.begin(), other.points_.end());
  }

  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<ArchivedPoint>& points() const noexcept { return points_; }

  std::vector<std::string> run_ids() const {
    std::vector<std::string> ids;
    for (const auto& p : points_) {
      if (std::find(ids.begin(), ids.end(), p.run_id) == ids.end()) ids.push_back(p.run_id);
    }
    return ids;
  }

  /// Non-dominated points of one run.
  std::vector<ObjectiveVector> run_front(const std::string& run_id) const {
    std::vector<ObjectiveVector> pts;
    for (const auto& p : points_) {
      if (p.run_id == run_id) pts.push_back(p.f);
    }
    return pareto_filter(pts);
  }

  /// Union of each run's own non-dominated front.
  std::vector<ObjectiveVector> pooled_run_fronts() const {
    std::vector<ObjectiveVector> all;
    for (const auto& id : run_ids()) {
      auto front = run_front(id);
      all.insert(all.end(), front.begin(), front.end());
    }
    return all;
  }

  /// Non-dominated subset of all points from all runs.
  std::vector<ObjectiveVector> pareto_front() const {
    ParetoSet set;
    for (const auto& p : points_) set.insert(p.f);
    return set.points();
  }

 private:
  std::vector<ArchivedPoint> points_;
};

inline constexpr double kDefaultReferenceRho = 0.1;
// Extra offset for a coordinate whose range is zero, so r stays strictly worse.
inline constexpr double kDegenerateRangeEpsilon = 1e-9;

/// r_i = min_i - rho * (max_i - min_i) over `front_points`.
inline ReferencePoint compute_reference_point(
    std::span<const ObjectiveVector> front_points,
    double rho = kDefaultReferenceRho) {
  require(!front_points.empty(), "reference point needs at least one point");
  require(rho >= 0.0, "rho must be nonnegative");
  const std::size_t k = front_points.front().size();
  std::vector<double> lo(k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
  for (const auto& p : front_points) {
    require(p.size() == k, "points differ in length");
    for (std::size_t i = 0; i < k; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  std::vector<double> r(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double range = hi[i] - lo[i];
    r[i] = lo[i] - rho * range;
    if (range == 0.0) r[i] -= kDegenerateRangeEpsilon;
  }
  return {ObjectiveVector(std::move(r))};
}

/// Reference point over the union of every archived run's front.
inline ReferencePoint compute_reference_point(const FrontArchive& archive,
                                              double rho = kDefaultReferenceRho) {
  require(!archive.empty(), "reference point needs a non-empty archive");
  return compute_reference_point(archive.pooled_run_fronts(), rho);
}

/// HV* of the pooled archive.
inline double optimal_hypervolume(const FrontArchive& archive,
                                  const ReferencePoint& r) {
  return hypervolume(archive.pareto_front(), r);
}

}  // namespace mopbt::metrics
