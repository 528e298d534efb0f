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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "mopbt/core/types.hpp"
#include "mopbt/engine/operators.hpp"
#include "mopbt/run_log.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::engine {

// Stand-in objective value for a failed evaluation. Worse than anything a
// task produces, but finite so ranking arithmetic stays defined.
inline constexpr double kFailedObjective = -1e300;

/// Objectives and feasibility of one checkpoint, or the failure of a task
/// that produced non-finite values.
struct Evaluation {
  std::vector<double> raw;
  ObjectiveVector objectives;
  ConstraintStatus constraint;
  bool failed = false;
};

inline Evaluation evaluate_checkpoint(const tasks::TrainableTask& task,
                                      const tasks::Checkpoint& ckpt) {
  Evaluation ev;
  ev.raw = task.evaluate(ckpt);
  require(ev.raw.size() == task.num_objectives(), "task returned the wrong objective count");
  if (!all_finite(ev.raw)) {
    ev.failed = true;
    ev.objectives = ObjectiveVector(std::vector<double>(ev.raw.size(), kFailedObjective));
    ev.constraint = {false, std::numeric_limits<double>::max()};
    return ev;
  }
  ev.objectives = ObjectiveVector(ev.raw);
  ev.constraint = task.has_constraint() ? task.constraint(ev.objectives)
                                        : ConstraintStatus::satisfied();
  return ev;
}

/// The log event for an evaluation: "eval" on success, "error" otherwise.
inline Event evaluation_event(const tasks::TrainableTask& task, const Evaluation& ev,
                              double t, std::uint64_t step, std::size_t sol,
                              const HyperparamVector& h, std::uint64_t work) {
  Event e;
  e.t = t;
  e.step = step;
  e.sol = sol;
  e.hp = h.indices;
  e.work = work;
  if (ev.failed) {
    e.kind = EventKind::kError;
    e.message = "non-finite objectives; solution marked infeasible";
    return e;
  }
  e.kind = EventKind::kEval;
  e.f = ev.objectives.values();
  if (task.has_constraint()) e.violation = ev.constraint.violation;
  return e;
}

/// Outcome of one algorithm run.
struct RunResult {
  RunLog log;
  std::map<std::size_t, tasks::Checkpoint> checkpoints;  // final state per id
  double duration_s = 0.0;                              // simulated clock at the end
  std::vector<Solution> population;                     // final population, if any
};

}  // namespace mopbt::engine
