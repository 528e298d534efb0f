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
#include <vector>

#include "mopbt/engine/evaluation.hpp"
#include "mopbt/engine/worker_pool.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::baselines {

struct RandomSearchConfig {
  std::size_t n_trials = 32;
  std::size_t total_steps = 0;
  std::size_t ready_interval = 0;  // 0: two epochs of the task
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  std::size_t resolved_ready_interval(const tasks::TrainableTask& task) const {
    return ready_interval != 0 ? ready_interval : 2 * task.steps_per_epoch();
  }

  void validate(const tasks::TrainableTask& task) const {
    require(n_trials >= 1, "random search needs at least one trial");
    const std::size_t ready = resolved_ready_interval(task);
    require(total_steps >= ready && total_steps % ready == 0,
            "total steps must be a positive multiple of the ready interval");
  }
};

/// Independent uniformly sampled hyperparameter vectors, each trained for
/// the full budget with an evaluation every ready interval. All trials run
/// side by side on the simulated clock.
inline engine::RunResult random_search(const tasks::TrainableTask& task,
                                       const RandomSearchConfig& cfg) {
  cfg.validate(task);
  const std::size_t ready = cfg.resolved_ready_interval(task);
  const double cost = task.seconds_per_step();
  Rng rng(cfg.seed);

  std::vector<HyperparamVector> hyperparams;
  std::vector<tasks::Checkpoint> checkpoints;
  for (std::size_t i = 0; i < cfg.n_trials; ++i) {
    hyperparams.push_back(task.search_space().sample_uniform(rng));
    checkpoints.push_back(task.init(rng));
  }

  engine::WorkerPool pool(cfg.workers);
  engine::RunResult result;
  std::vector<engine::Evaluation> evals(cfg.n_trials);
  std::uint64_t work = 0;
  for (std::size_t step = ready; step <= cfg.total_steps; step += ready) {
    pool.parallel_for(cfg.n_trials, [&](std::size_t i) {
      checkpoints[i] = task.train(checkpoints[i], hyperparams[i], ready);
      evals[i] = engine::evaluate_checkpoint(task, checkpoints[i]);
    });
    work += static_cast<std::uint64_t>(cfg.n_trials) * ready;
    for (std::size_t i = 0; i < cfg.n_trials; ++i) {
      result.log.append(engine::evaluation_event(task, evals[i],
                                                 static_cast<double>(step) * cost, step, i,
                                                 hyperparams[i], work));
    }
  }
  for (std::size_t i = 0; i < cfg.n_trials; ++i) result.checkpoints[i] = checkpoints[i];
  result.duration_s = static_cast<double>(cfg.total_steps) * cost;
  return result;
}

}  // namespace mopbt::baselines
