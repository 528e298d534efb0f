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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mopbt/metrics/archive.hpp"
#include "mopbt/metrics/coverage.hpp"
#include "mopbt/metrics/curve.hpp"
#include "mopbt/metrics/hypervolume.hpp"
#include "mopbt/metrics/pareto.hpp"
#include "support/oracles.hpp"

namespace mopbt::metrics {
namespace {

std::vector<ObjectiveVector> objectives(const std::vector<testing::Point>& pts) {
  std::vector<ObjectiveVector> out;
  for (const auto& p : pts) out.emplace_back(p);
  return out;
}

std::vector<testing::Point> random_points(Rng& rng, std::size_t n, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<testing::Point> pts(n, testing::Point(k));
  for (auto& p : pts) {
    for (auto& v : p) v = u(rng);
  }
  return pts;
}

ReferencePoint ref(std::vector<double> r) { return {ObjectiveVector(std::move(r))}; }

TEST(ParetoFilter, Examples) {
  const std::vector<ObjectiveVector> pts{{1, 0.5}, {0.5, 1}, {0.4, 0.4}};
  EXPECT_EQ(pareto_filter(pts), (std::vector<ObjectiveVector>{{1, 0.5}, {0.5, 1}}));
  // Incomparable with both extremes, so it stays.
  const std::vector<ObjectiveVector> kept{{1, 0}, {0, 1}, {0.4, 0.4}};
  EXPECT_EQ(pareto_filter(kept), kept);
  const std::vector<ObjectiveVector> one{{0.3, 0.2}};
  EXPECT_EQ(pareto_filter(one), one);
}

TEST(ParetoFilter, MatchesFirstFrontOracle) {
  Rng rng(3);
  const auto pts = random_points(rng, 100, 2);
  const auto fronts = testing::brute_force_fronts(pts);
  std::vector<ObjectiveVector> want;
  for (std::size_t i : fronts.front()) want.emplace_back(pts[i]);
  EXPECT_EQ(pareto_filter(objectives(pts)), want);
}

TEST(ParetoSet, IncrementalInsertMatchesBatchFilter) {
  Rng rng(4);
  const auto pts = objectives(random_points(rng, 200, 3));
  ParetoSet set;
  for (const auto& p : pts) set.insert(p);
  auto a = set.points();
  auto b = pareto_filter(pts);
  auto less = [](const ObjectiveVector& x, const ObjectiveVector& y) {
    return x.values() < y.values();
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  EXPECT_EQ(a, b);
}

TEST(Hypervolume, Examples) {
  const std::vector<ObjectiveVector> unit{{1, 1}};
  EXPECT_DOUBLE_EQ(hypervolume(unit, ref({0, 0})), 1.0);
  const std::vector<ObjectiveVector> two{{0.5, 1}, {1, 0.5}};
  EXPECT_DOUBLE_EQ(hypervolume(two, ref({0, 0})), 0.75);
}

TEST(Hypervolume, PointsNotStrictlyAboveReferenceIgnored) {
  const std::vector<ObjectiveVector> pts{{1, 0}, {0.5, 0.5}};
  EXPECT_DOUBLE_EQ(hypervolume(pts, ref({0, 0})), 0.25);
  EXPECT_EQ(hypervolume(std::vector<ObjectiveVector>{}, ref({0, 0})), 0.0);
}

TEST(Hypervolume, FourObjectivesUnsupported) {
  const std::vector<ObjectiveVector> pts{{1, 1, 1, 1}};
  EXPECT_THROW(hypervolume(pts, ref({0, 0, 0, 0})), UnsupportedError);
}

TEST(Hypervolume, MatchesInclusionExclusion) {
  Rng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const auto pts = random_points(rng, 1 + trial % 8, k);
    const testing::Point r(k, 0.1);
    EXPECT_NEAR(hypervolume(objectives(pts), ref(r)), testing::inclusion_exclusion_hv(pts, r),
                1e-9)
        << "trial " << trial;
  }
}

TEST(Hypervolume, AgreesWithMonteCarlo) {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = random_points(rng, 6, 3);
    const testing::Point r(3, 0.0);
    const auto mc = testing::monte_carlo_hv(pts, r, 200000, 1000 + trial);
    EXPECT_NEAR(hypervolume(objectives(pts), ref(r)), mc.value, 4 * mc.sigma);
  }
}

TEST(Hypervolume, MonotoneAndFilterInvariant) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + trial % 2;
    auto pts = objectives(random_points(rng, 12, k));
    const auto r = ref(std::vector<double>(k, 0.0));
    const double base = hypervolume(pts, r);
    EXPECT_NEAR(hypervolume(pareto_filter(pts), r), base, 1e-12);
    auto more = pts;
    more.push_back(objectives(random_points(rng, 1, k))[0]);
    EXPECT_GE(hypervolume(more, r), base - 1e-12);
    // A point dominated by an existing member changes nothing.
    std::vector<double> dominated = pts[0].values();
    for (auto& v : dominated) v *= 0.5;
    pts.emplace_back(dominated);
    EXPECT_NEAR(hypervolume(pts, r), base, 1e-12);
  }
}

TEST(ReferencePoint, Examples) {
  const std::vector<ObjectiveVector> pts{{0.2, 0.5}, {0.8, 0.1}};
  const auto r = compute_reference_point(pts, 0.1);
  EXPECT_NEAR(r.r[0], 0.14, 1e-15);
  EXPECT_NEAR(r.r[1], 0.06, 1e-15);
  const std::vector<ObjectiveVector> zeros{{0, 1}, {1, 0}};
  EXPECT_EQ(compute_reference_point(zeros, 0.0).r, ObjectiveVector({0, 0}));
}

TEST(ReferencePoint, DegenerateRangeStaysStrictlyBelow) {
  const std::vector<ObjectiveVector> pts{{0.5, 0.2}, {0.5, 0.7}};
  const auto r = compute_reference_point(pts, 0.1);
  EXPECT_LT(r.r[0], 0.5);
  EXPECT_NEAR(r.r[0], 0.5, 1e-8);
  EXPECT_GT(hypervolume(pts, r), 0.0);
}

TEST(ReferencePoint, EmptyArchiveIsError) {
  EXPECT_THROW(compute_reference_point(FrontArchive{}), ContractError);
}

TEST(FrontArchive, ReferenceUsesPerRunFronts) {
  RunLog a, b;
  Event e;
  e.f = {1.0, 0.0};
  a.append(e);
  e.f = {0.5, 0.5};
  a.append(e);
  e.f = {0.0, 1.0};
  b.append(e);
  FrontArchive archive;
  archive.add_run("a", a);
  archive.add_run("b", b);
  EXPECT_EQ(archive.run_ids(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(archive.pareto_front().size(), 3u);
  const auto r = compute_reference_point(archive, 0.1);
  EXPECT_NEAR(r.r[0], -0.1, 1e-15);
  EXPECT_NEAR(optimal_hypervolume(archive, r), hypervolume(archive.pareto_front(), r), 0.0);
}

TEST(Coverage, FigureNineConfiguration) {
  // Seven lines, eight sectors; points in sectors 0, 2, 4 and 6.
  const double width = std::numbers::pi / 2 / 8;
  std::vector<ObjectiveVector> pts;
  for (int s : {0, 2, 4, 6}) {
    const double a = (s + 0.5) * width;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  EXPECT_EQ(coverage(pts, ref({0, 0}), 7), 0.5);
}

TEST(Coverage, SinglePointAndZeroLines) {
  const std::vector<ObjectiveVector> one{{0.4, 0.3}};
  EXPECT_DOUBLE_EQ(coverage(one, ref({0, 0})), 1.0 / 361.0);
  EXPECT_EQ(coverage(one, ref({0, 0}), 0), 1.0);
}

TEST(Coverage, BoundaryGoesToLowerSector) {
  EXPECT_EQ(coverage_sector(1.0, 1.0, 2), 0u);
  EXPECT_EQ(coverage_sector(1.0, 1.0001, 2), 1u);
  EXPECT_EQ(coverage_sector(1.0, 0.0, 4), 0u);
  EXPECT_EQ(coverage_sector(0.0, 1.0, 4), 3u);
}

TEST(Coverage, NonBiObjectiveUnsupported) {
  const std::vector<ObjectiveVector> pts{{1, 1, 1}};
  EXPECT_THROW(coverage(pts, ref({0, 0, 0})), UnsupportedError);
}

TEST(Coverage, InRangeAndInvariantUnderDominatedAdditions) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto pts = objectives(random_points(rng, 20, 2));
    const auto r = ref({0, 0});
    const double c = coverage(pts, r);
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 1.0);
    // A slightly shrunk copy of a point lies in the same sector and is dominated.
    std::vector<double> inner = pts[trial % 20].values();
    for (auto& v : inner) v *= 0.9;
    pts.emplace_back(inner);
    EXPECT_EQ(coverage(pts, r), c);
  }
}

TEST(LogGap, Examples) {
  EXPECT_NEAR(log_gap(1.0, 0.9), -1.0, 1e-12);
  EXPECT_EQ(log_gap(1.0, 1.0), -12.0);
}

TEST(LogGapCurve, NonIncreasingAndOnePointPerTimestamp) {
  Rng rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RunLog log;
  for (int t = 0; t < 10; ++t) {
    for (int s = 0; s < 4; ++s) {
      Event e;
      e.t = t;
      e.sol = s;
      e.f = {u(rng), u(rng)};
      log.append(e);
    }
  }
  const auto r = ref({-0.1, -0.1});
  const double hv_star = hypervolume(run_front(log), r);
  const auto curve = log_hv_gap_curve(log, hv_star, r);
  ASSERT_EQ(curve.size(), 10u);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_LE(curve[i].log_gap, curve[i - 1].log_gap);
    EXPECT_GE(curve[i].hv, curve[i - 1].hv);
  }
  EXPECT_EQ(curve.back().log_gap, -12.0);
}

}  // namespace
}  // namespace mopbt::metrics
