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
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mopbt/core/nondominated_sort.hpp"
#include "mopbt/core/ranking.hpp"
#include "mopbt/core/types.hpp"
#include "mopbt/engine/config.hpp"
#include "mopbt/scalarize.hpp"
#include "mopbt/search_space.hpp"
#include "mopbt/tasks/checkpoint.hpp"

namespace mopbt::engine {

/// One member of the population: hyperparameters plus model state.
struct Solution {
  std::size_t id = 0;
  HyperparamVector hyperparams;
  tasks::Checkpoint checkpoint;
  std::optional<ObjectiveVector> objectives;
  ConstraintStatus constraint;
  std::uint64_t step = 0;        // training steps of this lineage slot
  std::uint64_t generation = 0;  // exploit rounds that replaced this slot
};

/// h + shift clamped to [0, size - 1].
inline std::size_t apply_shift(std::size_t h, int shift, std::size_t size) {
  const long long moved = static_cast<long long>(h) + shift;
  return static_cast<std::size_t>(
      std::clamp<long long>(moved, 0, static_cast<long long>(size) - 1));
}

/// Local ordinal perturbation. Per coordinate: with probability p resample
/// uniformly, otherwise shift by s in {0, 1, 2, 3} with a random sign and
/// clamp at the domain edges.
inline HyperparamVector explore(const HyperparamVector& h, const SearchSpace& space,
                                double p, Rng& rng) {
  require(space.contains(h), "hyperparameters outside the search space");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> magnitude(0, 3);
  std::bernoulli_distribution negate(0.5);
  HyperparamVector out = h;
  for (std::size_t j = 0; j < space.size(); ++j) {
    const std::size_t size = space[j].size();
    if (unit(rng) < p) {
      std::uniform_int_distribution<std::size_t> pick(0, size - 1);
      out[j] = pick(rng);
    } else {
      int shift = magnitude(rng);
      if (negate(rng)) shift = -shift;
      out[j] = apply_shift(h[j], shift, size);
    }
  }
  return out;
}

/// Classic random mutation: each coordinate is resampled uniformly with
/// probability 1/P.
inline HyperparamVector explore_random(const HyperparamVector& h,
                                       const SearchSpace& space, Rng& rng) {
  require(space.contains(h), "hyperparameters outside the search space");
  std::bernoulli_distribution mutate(1.0 / static_cast<double>(space.size()));
  HyperparamVector out = h;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (mutate(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, space[j].size() - 1);
      out[j] = pick(rng);
    }
  }
  return out;
}

inline HyperparamVector mutate(const HyperparamVector& h, const SearchSpace& space,
                               Mutation mutation, double p, Rng& rng) {
  return mutation == Mutation::kLocal ? explore(h, space, p, rng)
                                      : explore_random(h, space, rng);
}

/// Orders populations best to worst under one ranking rule. Holds the fixed
/// weight set of max-scalarization ranking, sampled once at construction.
class PopulationRanker {
 public:
  PopulationRanker(Ranking ranking, std::size_t num_objectives, bool constraints,
                   Rng& rng)
      : ranking_(ranking), k_(num_objectives), constraints_(constraints) {
    if (ranking_.kind == RankingKind::kMaxScalarization) {
      weights_ = scalarize::sample_unit_weights(rng, k_, ranking_.weight_count);
    }
  }

  const Ranking& ranking() const noexcept { return ranking_; }
  const std::vector<scalarize::WeightVector>& fixed_weights() const noexcept {
    return weights_;
  }

  /// Permutation of [0, n) from best to worst. `constraints` may be empty
  /// when constraint handling is off.
  std::vector<std::size_t> order(std::span<const ObjectiveVector> objectives,
                                 std::span<const ConstraintStatus> constraints,
                                 Rng& rng) const {
    require(!objectives.empty(), "cannot rank an empty population");
    const bool use_constraints = constraints_ && !constraints.empty();
    if (use_constraints) {
      require(constraints.size() == objectives.size(), "constraint list size mismatch");
    }
    switch (ranking_.kind) {
      case RankingKind::kNdGreedySubset: {
        const auto fronts = core::non_dominated_sort(
            objectives, use_constraints ? constraints : std::span<const ConstraintStatus>{});
        return core::greedy_scattered_subset_order(fronts, objectives,
                                                   {ranking_.normalize_distances});
      }
      case RankingKind::kNdCrowding: {
        const auto fronts = core::non_dominated_sort(
            objectives, use_constraints ? constraints : std::span<const ConstraintStatus>{});
        return core::crowding_distance_order(fronts, objectives);
      }
      case RankingKind::kRandomScalarization: {
        const auto w = scalarize::sample_unit_weight(rng, k_);
        return by_score(objectives, use_constraints ? constraints : std::span<const ConstraintStatus>{},
                        [&](const ObjectiveVector& f) { return ranking_.scalarizer(f, w); });
      }
      case RankingKind::kMaxScalarization:
        return by_score(objectives, use_constraints ? constraints : std::span<const ConstraintStatus>{},
                        [&](const ObjectiveVector& f) {
                          return scalarize::max_scalarization(f, weights_, ranking_.scalarizer);
                        });
      case RankingKind::kSingleObjective:
        return by_score(objectives, use_constraints ? constraints : std::span<const ConstraintStatus>{},
                        [&](const ObjectiveVector& f) { return f[ranking_.objective]; });
    }
    return {};
  }

 private:
  // Descending score; with constraints, feasible first and then smaller
  // violation. Ties keep index order.
  template <typename Score>
  static std::vector<std::size_t> by_score(std::span<const ObjectiveVector> objectives,
                                           std::span<const ConstraintStatus> constraints,
                                           Score&& score) {
    std::vector<double> value(objectives.size());
    for (std::size_t i = 0; i < objectives.size(); ++i) value[i] = score(objectives[i]);
    std::vector<std::size_t> order(objectives.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (!constraints.empty()) {
        const auto& ca = constraints[a];
        const auto& cb = constraints[b];
        if (ca.feasible != cb.feasible) return ca.feasible;
        if (!ca.feasible && ca.violation != cb.violation) return ca.violation < cb.violation;
      }
      return value[a] > value[b];
    });
    return order;
  }

  Ranking ranking_;
  std::size_t k_;
  bool constraints_;
  std::vector<scalarize::WeightVector> weights_;
};

/// Orders a population best to worst. Every solution must carry objectives.
inline std::vector<std::size_t> sort_population(std::span<const Solution> population,
                                                const PopulationRanker& ranker,
                                                Rng& rng) {
  std::vector<ObjectiveVector> objectives;
  std::vector<ConstraintStatus> constraints;
  objectives.reserve(population.size());
  for (const auto& s : population) {
    if (!s.objectives) throw ContractError("cannot rank a solution that has not been evaluated");
    objectives.push_back(*s.objectives);
    constraints.push_back(s.constraint);
  }
  return ranker.order(objectives, constraints, rng);
}

struct Replacement {
  std::size_t loser = 0;
  std::size_t donor = 0;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

/// Truncation selection. Each of the bottom floor(tau N / 100) solutions of
/// `order` copies the checkpoint, hyperparameters and objective snapshot of
/// a donor drawn uniformly (with replacement) from the top floor(tau N / 100),
/// then perturbs the hyperparameters with `perturb`. Returns the pairs in
/// loser order; empty when the truncation count is zero.
template <typename Perturb>
std::vector<Replacement> exploit(std::span<Solution> population, double truncation_percent,
                                 std::span<const std::size_t> order, Rng& rng,
                                 Perturb&& perturb) {
  require(order.size() == population.size(), "order must cover the population");
  const std::size_t n = truncation_count(population.size(), truncation_percent);
  std::vector<Replacement> replaced;
  if (n == 0) return replaced;
  require(2 * n <= population.size(), "top and bottom groups overlap");
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t b = population.size() - n; b < population.size(); ++b) {
    const std::size_t loser = order[b];
    const std::size_t donor = order[pick(rng)];
    Solution& dst = population[loser];
    const Solution& src = population[donor];
    dst.checkpoint = src.checkpoint;
    dst.objectives = src.objectives;
    dst.constraint = src.constraint;
    dst.hyperparams = perturb(src.hyperparams);
    ++dst.generation;
    replaced.push_back({loser, donor});
  }
  return replaced;
}

}  // namespace mopbt::engine
