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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mopbt/core/dominance.hpp"
#include "mopbt/core/nondominated_sort.hpp"
#include "mopbt/core/ranking.hpp"
#include "support/oracles.hpp"

namespace mopbt {
namespace {

using core::FrontPartition;

std::vector<ObjectiveVector> to_objectives(const std::vector<testing::Point>& pts) {
  std::vector<ObjectiveVector> out;
  for (const auto& p : pts) out.emplace_back(p);
  return out;
}

// Coordinates on a coarse grid so that ties and duplicates actually occur.
std::vector<testing::Point> random_points(Rng& rng, std::size_t n, std::size_t k, bool grid) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> g(0, 5);
  std::vector<testing::Point> pts(n, testing::Point(k));
  for (auto& p : pts) {
    for (auto& v : p) v = grid ? g(rng) / 5.0 : u(rng);
  }
  return pts;
}

TEST(Dominance, BasicCases) {
  EXPECT_TRUE(core::dominates({1, 1}, {0, 1}));
  EXPECT_FALSE(core::dominates({1, 0}, {0, 1}));
  EXPECT_FALSE(core::dominates({0.5, 0.5}, {0.5, 0.5}));
}

TEST(Dominance, LengthMismatchIsContractError) {
  EXPECT_THROW(core::dominates({1, 1}, {1, 1, 1}), ContractError);
}

TEST(Dominance, NonFiniteObjectiveRejected) {
  EXPECT_THROW(ObjectiveVector({1.0, std::numeric_limits<double>::quiet_NaN()}), ContractError);
  EXPECT_THROW(ObjectiveVector({std::numeric_limits<double>::infinity()}), ContractError);
}

TEST(ConstraintDominance, RuleTable) {
  const auto ok = ConstraintStatus::satisfied();
  EXPECT_TRUE(core::constraint_dominates({0, 0}, ok, {1, 1}, ConstraintStatus::violated(0.1)));
  EXPECT_TRUE(core::constraint_dominates({0, 0}, ConstraintStatus::violated(0.2), {1, 1},
                                         ConstraintStatus::violated(0.5)));
  EXPECT_FALSE(core::constraint_dominates({1, 1}, ConstraintStatus::violated(0.5), {0, 0},
                                          ConstraintStatus::violated(0.2)));
  EXPECT_FALSE(core::constraint_dominates({1, 0}, ok, {0, 1}, ok));
  EXPECT_TRUE(core::constraint_dominates({1, 1}, ok, {0, 1}, ok));
  // Equal violations never dominate each other.
  EXPECT_FALSE(core::constraint_dominates({1, 1}, ConstraintStatus::violated(0.3), {0, 0},
                                          ConstraintStatus::violated(0.3)));
}

TEST(NonDominatedSort, Examples) {
  const std::vector<ObjectiveVector> one{{1, 1}};
  EXPECT_EQ(core::non_dominated_sort(one).fronts, (std::vector<std::vector<std::size_t>>{{0}}));
  // (0.4, 0.4) beats each extreme point on one axis, so all three are incomparable.
  const std::vector<ObjectiveVector> three{{1, 0}, {0, 1}, {0.4, 0.4}};
  EXPECT_EQ(core::non_dominated_sort(three).fronts,
            (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
  const std::vector<ObjectiveVector> layered{{1, 0.5}, {0.5, 1}, {0.4, 0.4}};
  EXPECT_EQ(core::non_dominated_sort(layered).fronts,
            (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
}

TEST(NonDominatedSort, EmptyInputIsError) {
  EXPECT_THROW(core::non_dominated_sort(std::vector<ObjectiveVector>{}), ContractError);
}

TEST(NonDominatedSort, MatchesBruteForceOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const auto pts = random_points(rng, 1 + trial % 48, k, trial % 3 == 0);
    EXPECT_EQ(core::non_dominated_sort(to_objectives(pts)).fronts,
              testing::brute_force_fronts(pts))
        << "trial " << trial;
  }
}

TEST(NonDominatedSort, ConstraintsPutFeasibleFirst) {
  const std::vector<ObjectiveVector> f{{0, 0}, {1, 1}, {2, 2}};
  const std::vector<ConstraintStatus> c{ConstraintStatus::satisfied(),
                                        ConstraintStatus::violated(0.5),
                                        ConstraintStatus::violated(0.1)};
  EXPECT_EQ(core::non_dominated_sort(f, c).fronts,
            (std::vector<std::vector<std::size_t>>{{0}, {2}, {1}}));
}

TEST(NonDominatedSort, EveryIndexAppearsOnceAndFrontsAreAntichains) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto objs = to_objectives(random_points(rng, 40, 3, trial % 2 == 0));
    const auto part = core::non_dominated_sort(objs);
    EXPECT_EQ(part.population_size(), objs.size());
    const auto rank = part.rank_of();
    for (std::size_t i = 0; i < objs.size(); ++i) {
      for (std::size_t j = 0; j < objs.size(); ++j) {
        if (core::dominates(objs[i], objs[j])) {
          EXPECT_LT(rank[i], rank[j]);
        }
      }
    }
  }
}

TEST(GreedySubset, Example) {
  const std::vector<ObjectiveVector> f{{1, 0}, {0, 1}, {0.5, 0.5}};
  const auto order = core::greedy_scattered_subset_order(core::non_dominated_sort(f), f);
  EXPECT_EQ(order, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GreedySubset, LargestFirstObjectiveLeads) {
  const std::vector<ObjectiveVector> f{{0.2, 0.9}, {0.9, 0.2}, {0.6, 0.6}};
  const auto order = core::greedy_scattered_subset_order(core::non_dominated_sort(f), f);
  EXPECT_EQ(order.front(), 1u);
}

TEST(GreedySubset, SingletonAndDuplicates) {
  const std::vector<ObjectiveVector> single{{0.3, 0.3}};
  EXPECT_EQ(core::greedy_scattered_subset_order(core::non_dominated_sort(single), single),
            (std::vector<std::size_t>{0}));
  const std::vector<ObjectiveVector> twins{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_EQ(core::greedy_scattered_subset_order(core::non_dominated_sort(twins), twins),
            (std::vector<std::size_t>{0, 1}));
}

TEST(GreedySubset, MatchesPerStepOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pts = random_points(rng, 1 + trial % 40, 2 + trial % 2, trial % 4 == 0);
    const auto objs = to_objectives(pts);
    const auto part = core::non_dominated_sort(objs);
    const auto order = core::greedy_scattered_subset_order(part, objs);
    EXPECT_EQ(testing::first_greedy_violation(part.fronts, pts, order), pts.size())
        << "trial " << trial;
  }
}

TEST(GreedySubset, FrontRanksNonDecreasingAlongOrder) {
  Rng rng(17);
  const auto objs = to_objectives(random_points(rng, 50, 2, false));
  const auto part = core::non_dominated_sort(objs);
  const auto rank = part.rank_of();
  const auto order = core::greedy_scattered_subset_order(part, objs);
  for (std::size_t i = 1; i < order.size(); ++i) EXPECT_LE(rank[order[i - 1]], rank[order[i]]);
}

TEST(GreedySubset, NormalizedOptionIsScaleInvariant) {
  const std::vector<ObjectiveVector> a{{1, 0}, {0, 1}, {0.8, 0.5}, {0.3, 0.9}};
  const std::vector<ObjectiveVector> b{{1000, 0}, {0, 1}, {800, 0.5}, {300, 0.9}};
  const core::GreedySubsetOptions norm{true};
  EXPECT_EQ(core::greedy_scattered_subset_order(core::non_dominated_sort(a), a, norm),
            core::greedy_scattered_subset_order(core::non_dominated_sort(b), b, norm));
}

TEST(GreedySubset, PartitionMismatchIsError) {
  const std::vector<ObjectiveVector> f{{1, 0}, {0, 1}};
  EXPECT_THROW(core::greedy_scattered_subset_order(FrontPartition{{{0}}}, f), ContractError);
}

TEST(Crowding, TwoPointsAreBothBoundary) {
  const std::vector<ObjectiveVector> f{{1, 0}, {0, 1}};
  const std::vector<std::size_t> front{0, 1};
  const auto d = core::crowding_distances(front, f);
  EXPECT_TRUE(std::isinf(d[0]) && std::isinf(d[1]));
  EXPECT_EQ(core::crowding_distance_order(core::non_dominated_sort(f), f),
            (std::vector<std::size_t>{0, 1}));
}

TEST(Crowding, BoundariesBeforeMiddle) {
  const std::vector<ObjectiveVector> f{{0, 1}, {0.5, 0.4}, {1, 0}};
  EXPECT_EQ(core::crowding_distance_order(core::non_dominated_sort(f), f),
            (std::vector<std::size_t>{0, 2, 1}));
  const std::vector<std::size_t> front{0, 1, 2};
  // Normalized cuboid sides: (1-0)/1 + (1-0)/1.
  EXPECT_DOUBLE_EQ(core::crowding_distances(front, f)[1], 2.0);
}

TEST(Crowding, MatchesTextbookOracle) {
  Rng rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    // Points on an anti-diagonal curve form a single front.
    std::vector<testing::Point> pts;
    for (int i = 0; i < 5; ++i) {
      const double x = u(rng);
      pts.push_back({x, 1.0 - x * x});
    }
    const auto objs = to_objectives(pts);
    std::vector<std::size_t> front{0, 1, 2, 3, 4};
    const auto got = core::crowding_distances(front, objs);
    const auto want = testing::textbook_crowding(pts);
    for (std::size_t i = 0; i < 5; ++i) {
      if (std::isinf(want[i])) {
        EXPECT_TRUE(std::isinf(got[i]));
      }
      else EXPECT_NEAR(got[i], want[i], 1e-12);
    }
  }
}

}  // namespace
}  // namespace mopbt
