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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "mopbt/core/types.hpp"
#include "mopbt/scalarize.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::engine {

enum class RankingKind {
  kNdGreedySubset,        // non-dominated sort + greedy scattered subset
  kNdCrowding,            // non-dominated sort + crowding distance
  kRandomScalarization,   // new random weight at every ranking call
  kMaxScalarization,      // max over a weight set fixed for the run
  kSingleObjective,       // one objective only
};

struct Ranking {
  RankingKind kind = RankingKind::kNdGreedySubset;
  scalarize::Scalarizer scalarizer{};
  std::size_t objective = 0;
  std::size_t weight_count = 100;
  bool normalize_distances = false;

  static Ranking greedy_subset() { return {}; }
  static Ranking crowding() { return {RankingKind::kNdCrowding}; }

  static Ranking random_scalarization(
      scalarize::Scalarizer s = {scalarize::Scalarizer::Kind::kParego}) {
    return {RankingKind::kRandomScalarization, s};
  }

  static Ranking max_scalarization(
      scalarize::Scalarizer s = {scalarize::Scalarizer::Kind::kGolovin},
      std::size_t weight_count = 100) {
    return {RankingKind::kMaxScalarization, s, 0, weight_count};
  }

  static Ranking single_objective(std::size_t i) {
    return {RankingKind::kSingleObjective, {}, i};
  }

  bool multi_objective() const {
    return kind == RankingKind::kNdGreedySubset || kind == RankingKind::kNdCrowding;
  }
};

inline std::string_view to_string(RankingKind kind) {
  switch (kind) {
    case RankingKind::kNdGreedySubset: return "nd-greedy";
    case RankingKind::kNdCrowding: return "nd-crowding";
    case RankingKind::kRandomScalarization: return "random-scalarization";
    case RankingKind::kMaxScalarization: return "max-scalarization";
    case RankingKind::kSingleObjective: return "single-objective";
  }
  return "?";
}

inline RankingKind ranking_kind_from_string(std::string_view s) {
  if (s == "nd-greedy") return RankingKind::kNdGreedySubset;
  if (s == "nd-crowding") return RankingKind::kNdCrowding;
  if (s == "random-scalarization") return RankingKind::kRandomScalarization;
  if (s == "max-scalarization") return RankingKind::kMaxScalarization;
  if (s == "single-objective") return RankingKind::kSingleObjective;
  throw ContractError("unknown ranking: " + std::string(s));
}

enum class Mutation { kLocal, kRandom };
enum class Mode { kSynchronous, kAsynchronous };

struct EngineConfig {
  std::size_t population_size = 32;
  double truncation_percent = 25.0;
  std::size_t ready_interval = 0;  // 0: two epochs of the task
  std::size_t total_steps = 0;
  double resample_probability = 0.2;
  Ranking ranking{};
  Mutation mutation = Mutation::kLocal;
  bool constraints = false;
  Mode mode = Mode::kSynchronous;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  std::size_t resolved_ready_interval(const tasks::TrainableTask& task) const {
    return ready_interval != 0 ? ready_interval : 2 * task.steps_per_epoch();
  }

  void validate(const tasks::TrainableTask& task) const {
    require(population_size >= 4, "population size must be at least 4");
    // 50 is admitted: the top and bottom halves stay disjoint.
    require(truncation_percent > 0.0 && truncation_percent <= 50.0,
            "truncation percent must lie in (0, 50]");
    require(resample_probability >= 0.0 && resample_probability <= 1.0,
            "resample probability must lie in [0, 1]");
    const std::size_t ready = resolved_ready_interval(task);
    require(total_steps >= ready, "total steps must cover at least one ready interval");
    if (mode == Mode::kSynchronous) {
      require(total_steps % ready == 0,
              "total steps must be a multiple of the ready interval in synchronous mode");
    }
    if (ranking.kind == RankingKind::kSingleObjective) {
      require(ranking.objective < task.num_objectives(),
              "single-objective ranking index exceeds the task's objective count");
    }
    if (ranking.kind == RankingKind::kMaxScalarization) {
      require(ranking.weight_count >= 1, "max scalarization needs at least one weight");
    }
  }
};

/// floor(tau * N / 100): how many solutions exploit replaces per round.
inline std::size_t truncation_count(std::size_t population, double percent) {
  return static_cast<std::size_t>(
      std::floor(percent * static_cast<double>(population) / 100.0 + 1e-9));
}

}  // namespace mopbt::engine
