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
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "mopbt/core/nondominated_sort.hpp"
#include "mopbt/core/ranking.hpp"
#include "mopbt/engine/evaluation.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::baselines {

/// Multi-objective ASHA settings. Rung spacing and the promotion rule follow
/// the usual ASHA design; every value is configurable.
struct AshaConfig {
  std::size_t reduction_factor = 2;  // eta
  std::size_t min_resource = 0;      // 0: two epochs of the task
  std::size_t max_resource = 0;      // full training length
  std::size_t max_concurrent = 32;   // simulated workers
  double time_budget_s = 0.0;        // simulated seconds
  std::uint64_t seed = 0;

  std::size_t resolved_min_resource(const tasks::TrainableTask& task) const {
    return min_resource != 0 ? min_resource : 2 * task.steps_per_epoch();
  }

  /// min * eta^k for every k with min * eta^k <= max; max itself is appended
  /// as the final rung when it is not on the ladder.
  std::vector<std::size_t> rungs(const tasks::TrainableTask& task) const {
    const std::size_t lo = resolved_min_resource(task);
    std::vector<std::size_t> ladder;
    for (std::size_t r = lo; r <= max_resource; r *= reduction_factor) {
      ladder.push_back(r);
      if (r > max_resource / reduction_factor) break;
    }
    if (ladder.empty() || ladder.back() != max_resource) ladder.push_back(max_resource);
    return ladder;
  }

  void validate(const tasks::TrainableTask& task) const {
    require(reduction_factor >= 2, "reduction factor must be at least 2");
    const std::size_t lo = resolved_min_resource(task);
    require(max_resource >= lo, "max resource must be at least the min resource");
    require(max_resource % lo == 0, "max resource must be a multiple of the min resource");
    require(max_concurrent >= 1, "at least one concurrent trial is required");
    require(time_budget_s >= 0.0, "time budget must be nonnegative");
  }
};

/// ceil(n / eta): how many of n results at a rung may continue.
inline std::size_t promotable_count(std::size_t n, std::size_t eta) {
  return (n + eta - 1) / eta;
}

/// Results recorded at one rung, ranked with non-dominated sorting and
/// greedy scattered subset selection.
class RungTable {
 public:
  struct Decision {
    std::size_t position = 0;  // 0-based rank among recorded results
    std::size_t size = 0;
    bool promoted = false;
  };

  /// Records `f` for `trial` and decides whether it is in the top 1/eta.
  Decision record(std::size_t trial, const ObjectiveVector& f, std::size_t eta) {
    trials_.push_back(trial);
    objectives_.push_back(f);
    const auto order = core::greedy_scattered_subset_order(
        core::non_dominated_sort(objectives_), objectives_);
    const auto self = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), trials_.size() - 1) - order.begin());
    return {self, trials_.size(), self < promotable_count(trials_.size(), eta)};
  }

  std::size_t size() const noexcept { return trials_.size(); }

 private:
  std::vector<std::size_t> trials_;
  std::vector<ObjectiveVector> objectives_;
};

/// Asynchronous successive halving with multi-objective promotion, simulated
/// on a discrete-event clock with `max_concurrent` workers.
///
/// A worker trains its trial in chunks of the minimum resource and evaluates
/// after each chunk. When a trial reaches a rung it is ranked against every
/// result recorded at that rung; it continues iff it lies in the top 1/eta,
/// otherwise it stops and the worker starts a fresh uniformly sampled trial.
/// Chunks that would finish after the time budget are not run.
inline engine::RunResult mo_asha(const tasks::TrainableTask& task, const AshaConfig& cfg) {
  cfg.validate(task);
  const std::vector<std::size_t> ladder = cfg.rungs(task);
  const std::size_t chunk = cfg.resolved_min_resource(task);
  const double cost = task.seconds_per_step();
  // The clock ticks in training steps of one worker; seconds = ticks * cost.
  const auto budget_ticks =
      static_cast<std::uint64_t>(std::floor(cfg.time_budget_s / cost + 1e-9));
  Rng rng(cfg.seed);
  engine::RunResult result;

  if (budget_ticks < chunk) {
    Event e;
    e.kind = EventKind::kError;
    e.message = "empty front: time budget is shorter than one minimum-resource training";
    result.log.append(std::move(e));
    return result;
  }

  struct Trial {
    HyperparamVector hyperparams;
    tasks::Checkpoint checkpoint;
    std::uint64_t steps = 0;
    std::size_t next_rung = 0;
  };
  std::vector<Trial> trials;
  std::vector<RungTable> tables(ladder.size());

  auto new_trial = [&] {
    Trial t;
    t.hyperparams = task.search_space().sample_uniform(rng);
    t.checkpoint = task.init(rng);
    trials.push_back(std::move(t));
    return trials.size() - 1;
  };

  // (finish time, worker) -> trial; ties resolve by worker id.
  using Slot = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Slot, std::vector<Slot>, std::greater<>> busy;
  std::vector<std::size_t> running(cfg.max_concurrent);
  for (std::size_t w = 0; w < cfg.max_concurrent; ++w) {
    running[w] = new_trial();
    busy.push({chunk, w});
  }

  std::uint64_t work = 0;
  while (!busy.empty()) {
    const auto [now, worker] = busy.top();
    busy.pop();
    Trial& trial = trials[running[worker]];
    const std::size_t id = running[worker];
    trial.checkpoint = task.train(trial.checkpoint, trial.hyperparams, chunk);
    trial.steps += chunk;
    work += chunk;
    const engine::Evaluation ev = engine::evaluate_checkpoint(task, trial.checkpoint);
    Event e = engine::evaluation_event(task, ev, static_cast<double>(now) * cost, trial.steps,
                                       id, trial.hyperparams, work);

    bool keep_going = true;
    if (trial.steps == ladder[trial.next_rung]) {
      const std::size_t rung = trial.next_rung++;
      const bool top = rung + 1 == ladder.size();
      const auto decision = tables[rung].record(id, ev.objectives, cfg.reduction_factor);
      e.rung = rung;
      e.promoted = decision.promoted && !top;
      e.rung_rank = decision.position;
      e.rung_size = decision.size;
      keep_going = *e.promoted;
    }
    result.log.append(std::move(e));
    result.checkpoints[id] = trial.checkpoint;

    if (!keep_going) running[worker] = new_trial();
    const std::uint64_t finish = now + chunk;
    if (finish <= budget_ticks) busy.push({finish, worker});
  }
  result.duration_s = cfg.time_budget_s;
  return result;
}

}  // namespace mopbt::baselines
