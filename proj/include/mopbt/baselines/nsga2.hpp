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
#include <random>
#include <vector>

#include "mopbt/core/nondominated_sort.hpp"
#include "mopbt/core/ranking.hpp"
#include "mopbt/engine/config.hpp"
#include "mopbt/engine/evaluation.hpp"
#include "mopbt/engine/operators.hpp"
#include "mopbt/engine/worker_pool.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::baselines {

struct Nsga2Config {
  std::size_t population_size = 8;
  std::size_t budget = 32;  // fully trained networks, initial population included
  double crossover_probability = 0.9;
  double resample_probability = 0.2;
  engine::Mutation mutation = engine::Mutation::kLocal;
  std::size_t total_steps = 0;
  std::size_t ready_interval = 0;  // 0: two epochs of the task
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  std::size_t resolved_ready_interval(const tasks::TrainableTask& task) const {
    return ready_interval != 0 ? ready_interval : 2 * task.steps_per_epoch();
  }

  /// Offspring generations after the initial population.
  std::size_t generations() const {
    return budget > population_size ? (budget - population_size) / population_size : 0;
  }

  void validate(const tasks::TrainableTask& task) const {
    require(population_size >= 2, "NSGA-II needs a population of at least 2");
    require(budget >= population_size, "budget must cover the initial population");
    require(crossover_probability >= 0.0 && crossover_probability <= 1.0,
            "crossover probability must lie in [0, 1]");
    const std::size_t ready = resolved_ready_interval(task);
    require(total_steps >= ready && total_steps % ready == 0,
            "total steps must be a positive multiple of the ready interval");
  }
};

/// Positions of every member in the mo-core order (0 = best).
inline std::vector<std::size_t> mo_positions(const std::vector<ObjectiveVector>& objectives) {
  const auto order = core::greedy_scattered_subset_order(
      core::non_dominated_sort(objectives), objectives);
  std::vector<std::size_t> position(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = p;
  return position;
}

/// Indices of the `mu` best members of `objectives` under the mo-core order.
inline std::vector<std::size_t> nsga2_survivors(const std::vector<ObjectiveVector>& objectives,
                                                std::size_t mu) {
  auto order = core::greedy_scattered_subset_order(core::non_dominated_sort(objectives),
                                                   objectives);
  order.resize(std::min(mu, order.size()));
  return order;
}

/// Generational NSGA-II in which every individual is a network trained from
/// scratch for the full budget. Tournament and (mu + lambda) survival use
/// the non-dominated sort + greedy scattered subset order; variation is
/// uniform crossover followed by the explore mutation. Each generation's
/// trainings run side by side on the simulated clock.
inline engine::RunResult nsga2(const tasks::TrainableTask& task, const Nsga2Config& cfg) {
  cfg.validate(task);
  const std::size_t ready = cfg.resolved_ready_interval(task);
  const double cost = task.seconds_per_step();
  const auto& space = task.search_space();
  const std::size_t mu = cfg.population_size;
  Rng rng(cfg.seed);
  engine::WorkerPool pool(cfg.workers);
  engine::RunResult result;
  std::uint64_t work = 0;
  std::size_t next_id = 0;

  struct Individual {
    std::size_t id = 0;
    HyperparamVector hyperparams;
    tasks::Checkpoint checkpoint;
    ObjectiveVector objectives;
  };

  auto train_batch = [&](std::vector<HyperparamVector> batch, std::size_t generation) {
    std::vector<Individual> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      out[i].id = next_id++;
      out[i].hyperparams = std::move(batch[i]);
      out[i].checkpoint = task.init(rng);
    }
    const double offset = static_cast<double>(generation * cfg.total_steps);
    std::vector<engine::Evaluation> evals(out.size());
    for (std::size_t step = ready; step <= cfg.total_steps; step += ready) {
      pool.parallel_for(out.size(), [&](std::size_t i) {
        out[i].checkpoint = task.train(out[i].checkpoint, out[i].hyperparams, ready);
        evals[i] = engine::evaluate_checkpoint(task, out[i].checkpoint);
      });
      work += static_cast<std::uint64_t>(out.size()) * ready;
      for (std::size_t i = 0; i < out.size(); ++i) {
        result.log.append(engine::evaluation_event(
            task, evals[i], (offset + static_cast<double>(step)) * cost, step, out[i].id,
            out[i].hyperparams, work));
        out[i].objectives = evals[i].objectives;
      }
    }
    for (const auto& ind : out) result.checkpoints[ind.id] = ind.checkpoint;
    return out;
  };

  std::vector<HyperparamVector> initial;
  for (std::size_t i = 0; i < mu; ++i) initial.push_back(space.sample_uniform(rng));
  std::vector<Individual> population = train_batch(std::move(initial), 0);

  std::uniform_int_distribution<std::size_t> pick(0, mu - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const std::size_t generations = cfg.generations();
  for (std::size_t g = 1; g <= generations; ++g) {
    std::vector<ObjectiveVector> objectives;
    for (const auto& ind : population) objectives.push_back(ind.objectives);
    const auto position = mo_positions(objectives);
    auto tournament = [&] {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      return position[a] <= position[b] ? a : b;
    };

    std::vector<HyperparamVector> children;
    for (std::size_t c = 0; c < mu; ++c) {
      const std::size_t first = tournament();
      const std::size_t second = tournament();
      HyperparamVector child = population[first].hyperparams;
      if (unit(rng) < cfg.crossover_probability) {
        for (std::size_t j = 0; j < child.size(); ++j) {
          if (coin(rng)) child[j] = population[second].hyperparams[j];
        }
      }
      children.push_back(
          engine::mutate(child, space, cfg.mutation, cfg.resample_probability, rng));
    }
    std::vector<Individual> offspring = train_batch(std::move(children), g);

    std::vector<Individual> merged = std::move(population);
    merged.insert(merged.end(), offspring.begin(), offspring.end());
    std::vector<ObjectiveVector> merged_objectives;
    for (const auto& ind : merged) merged_objectives.push_back(ind.objectives);
    population.clear();
    for (std::size_t i : nsga2_survivors(merged_objectives, mu)) population.push_back(merged[i]);
  }

  for (const auto& ind : population) {
    engine::Solution s;
    s.id = ind.id;
    s.hyperparams = ind.hyperparams;
    s.checkpoint = ind.checkpoint;
    s.objectives = ind.objectives;
    s.step = cfg.total_steps;
    result.population.push_back(std::move(s));
  }
  result.duration_s = static_cast<double>((generations + 1) * cfg.total_steps) * cost;
  return result;
}

}  // namespace mopbt::baselines
