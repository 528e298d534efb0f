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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <vector>

#include "mopbt/engine/config.hpp"
#include "mopbt/engine/evaluation.hpp"
#include "mopbt/engine/operators.hpp"
#include "mopbt/engine/stores.hpp"
#include "mopbt/engine/worker_pool.hpp"
#include "mopbt/run_log.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::engine {

namespace detail {

inline std::vector<Solution> initial_population(const EngineConfig& cfg,
                                                const tasks::TrainableTask& task,
                                                Rng& rng) {
  std::vector<Solution> population(cfg.population_size);
  for (std::size_t i = 0; i < population.size(); ++i) {
    population[i].id = i;
    population[i].hyperparams = task.search_space().sample_uniform(rng);
    population[i].checkpoint = task.init(rng);
  }
  return population;
}

inline void apply(Solution& s, const Evaluation& ev) {
  s.objectives = ev.objectives;
  s.constraint = ev.constraint;
}

inline Event exploit_event(const Solution& loser, std::size_t donor, double t,
                           std::uint64_t work) {
  Event e;
  e.t = t;
  e.step = loser.step;
  e.kind = EventKind::kExploit;
  e.sol = loser.id;
  if (loser.objectives) e.f = loser.objectives->values();
  e.hp = loser.hyperparams.indices;
  e.donor = donor;
  e.work = work;
  return e;
}

inline RunResult run_synchronous(const EngineConfig& cfg, const tasks::TrainableTask& task) {
  const std::size_t ready = cfg.resolved_ready_interval(task);
  const std::size_t rounds = cfg.total_steps / ready;
  const std::size_t n = cfg.population_size;
  const double cost = task.seconds_per_step();
  const auto& space = task.search_space();

  Rng rng(cfg.seed);
  std::vector<Solution> population = initial_population(cfg, task, rng);
  const PopulationRanker ranker(cfg.ranking, task.num_objectives(), cfg.constraints, rng);
  auto perturb = [&](const HyperparamVector& h) {
    return mutate(h, space, cfg.mutation, cfg.resample_probability, rng);
  };

  WorkerPool pool(cfg.workers);
  RunResult result;
  std::uint64_t work = 0;
  std::vector<Evaluation> evals(n);
  for (std::size_t round = 1; round <= rounds; ++round) {
    pool.parallel_for(n, [&](std::size_t i) {
      population[i].checkpoint =
          task.train(population[i].checkpoint, population[i].hyperparams, ready);
      evals[i] = evaluate_checkpoint(task, population[i].checkpoint);
    });
    work += static_cast<std::uint64_t>(n) * ready;
    const double t = static_cast<double>(round * ready) * cost;
    for (std::size_t i = 0; i < n; ++i) {
      Solution& s = population[i];
      s.step += ready;
      apply(s, evals[i]);
      result.log.append(evaluation_event(task, evals[i], t, s.step, s.id, s.hyperparams, work));
    }
    if (round == rounds) break;

    const auto order = sort_population(population, ranker, rng);
    if (truncation_count(n, cfg.truncation_percent) == 0) {
      Event e;
      e.t = t;
      e.step = round * ready;
      e.kind = EventKind::kWarning;
      e.work = work;
      e.message = "truncation count is zero; exploit skipped";
      result.log.append(std::move(e));
      continue;
    }
    for (const auto& r : exploit(std::span<Solution>(population), cfg.truncation_percent,
                                 order, rng, perturb)) {
      result.log.append(exploit_event(population[r.loser], r.donor, t, work));
    }
  }

  result.duration_s = static_cast<double>(cfg.total_steps) * cost;
  for (const auto& s : population) result.checkpoints[s.id] = s.checkpoint;
  result.population = std::move(population);
  return result;
}

// Each slot runs train -> evaluate -> rank -> maybe exploit on its own. Ranking
// uses the latest snapshot of every evaluated slot; a replacement only ever
// happens at the loser's own ready point.
inline RunResult run_asynchronous(const EngineConfig& cfg, const tasks::TrainableTask& task) {
  const std::size_t ready = cfg.resolved_ready_interval(task);
  const double cost = task.seconds_per_step();
  const auto& space = task.search_space();

  Rng rng(cfg.seed);
  std::mutex rng_mutex;
  std::vector<Solution> initial = initial_population(cfg, task, rng);
  const PopulationRanker ranker(cfg.ranking, task.num_objectives(), cfg.constraints, rng);
  PopulationStore store(std::move(initial));
  SharedRunLog log;
  std::atomic<std::uint64_t> work{0};

  WorkerPool pool(cfg.workers);
  std::function<void(std::size_t)> advance = [&](std::size_t id) {
    const Solution current = store.get(id);
    tasks::Checkpoint ckpt = task.train(current.checkpoint, current.hyperparams, ready);
    const Evaluation ev = evaluate_checkpoint(task, ckpt);
    const std::uint64_t done = work.fetch_add(ready) + ready;
    const std::uint64_t step = current.step + ready;
    store.update(id, [&](Solution& s) {
      s.checkpoint = std::move(ckpt);
      s.step = step;
      apply(s, ev);
    });
    log.append(evaluation_event(task, ev, static_cast<double>(step) * cost, step, id,
                                current.hyperparams, done));
    if (step + ready > cfg.total_steps) return;

    const std::vector<Solution> snapshot = store.snapshot();
    std::vector<std::size_t> members;
    std::vector<ObjectiveVector> objectives;
    std::vector<ConstraintStatus> constraints;
    for (const auto& s : snapshot) {
      if (!s.objectives) continue;
      members.push_back(s.id);
      objectives.push_back(*s.objectives);
      constraints.push_back(s.constraint);
    }
    const std::size_t cut = truncation_count(members.size(), cfg.truncation_percent);
    if (cut > 0) {
      std::unique_lock lock(rng_mutex);
      const auto order = ranker.order(objectives, constraints, rng);
      bool is_loser = false;
      for (std::size_t b = order.size() - cut; b < order.size(); ++b) {
        if (members[order[b]] == id) is_loser = true;
      }
      if (is_loser) {
        std::uniform_int_distribution<std::size_t> pick(0, cut - 1);
        const Solution& donor = snapshot[members[order[pick(rng)]]];
        const HyperparamVector h =
            mutate(donor.hyperparams, space, cfg.mutation, cfg.resample_probability, rng);
        lock.unlock();
        Solution updated;
        store.update(id, [&](Solution& s) {
          s.checkpoint = donor.checkpoint;
          s.objectives = donor.objectives;
          s.constraint = donor.constraint;
          s.hyperparams = h;
          ++s.generation;
          updated = s;
        });
        log.append(exploit_event(updated, donor.id, static_cast<double>(step) * cost, done));
      }
    }
    pool.submit([&advance, id] { advance(id); });
  };

  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    pool.submit([&advance, i] { advance(i); });
  }
  pool.wait_idle();

  RunResult result;
  result.log = log.take();
  result.population = store.snapshot();
  for (const auto& s : result.population) result.checkpoints[s.id] = s.checkpoint;
  result.duration_s = static_cast<double>(cfg.total_steps) * cost;
  return result;
}

}  // namespace detail

/// Runs population based training on `task`.
///
/// Slots start from uniformly sampled hyperparameters and fresh checkpoints.
/// Every ready interval each slot is trained and evaluated; then the
/// population is ranked and the bottom tau% copy (and perturb) the top tau%.
/// The last round is evaluated but not followed by exploit. Synchronous mode
/// is a pure function of (config, task).
inline RunResult run_pbt(const EngineConfig& cfg, const tasks::TrainableTask& task) {
  cfg.validate(task);
  return cfg.mode == Mode::kSynchronous ? detail::run_synchronous(cfg, task)
                                        : detail::run_asynchronous(cfg, task);
}

}  // namespace mopbt::engine
