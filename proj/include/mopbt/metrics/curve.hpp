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
#include <cstdint>
#include <numeric>
#include <vector>

#include "mopbt/metrics/hypervolume.hpp"
#include "mopbt/metrics/pareto.hpp"
#include "mopbt/run_log.hpp"

namespace mopbt::metrics {

// Lower clamp on HV* - HV before taking log10.
inline constexpr double kMinHypervolumeGap = 1e-12;

struct CurvePoint {
  double time = 0.0;
  std::uint64_t work = 0;
  double hv = 0.0;
  double log_gap = 0.0;
};

inline double log_gap(double hv_star, double hv) {
  return std::log10(std::max(hv_star - hv, kMinHypervolumeGap));
}

/// log10(HV* - HV_t) at every distinct evaluation timestamp of `run`, where
/// HV_t is the hypervolume of everything the run evaluated up to time t.
inline std::vector<CurvePoint> log_hv_gap_curve(const RunLog& run, double hv_star,
                                                const ReferencePoint& r) {
  std::vector<const Event*> evals = run.evaluations();
  std::stable_sort(evals.begin(), evals.end(),
                   [](const Event* a, const Event* b) { return a->t < b->t; });
  std::vector<CurvePoint> curve;
  ParetoSet front;
  std::uint64_t work = 0;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    front.insert(ObjectiveVector(evals[i]->f));
    work = std::max(work, evals[i]->work);
    const bool last_at_time = i + 1 == evals.size() || evals[i + 1]->t != evals[i]->t;
    if (!last_at_time) continue;
    const double hv = hypervolume(front.points(), r);
    curve.push_back({evals[i]->t, work, hv, log_gap(hv_star, hv)});
  }
  return curve;
}

/// Non-dominated set of every evaluation in `run`.
inline std::vector<ObjectiveVector> run_front(const RunLog& run) {
  ParetoSet front;
  for (const auto* e : run.evaluations()) front.insert(ObjectiveVector(e->f));
  return front.points();
}

}  // namespace mopbt::metrics
