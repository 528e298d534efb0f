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
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "mopbt/engine/pbt.hpp"
#include "mopbt/engine/stores.hpp"
#include "mopbt/tasks/toy_quadratic.hpp"

namespace mopbt::engine {
namespace {

tasks::ToyQuadraticTask toy() { return tasks::ToyQuadraticTask{}; }

EngineConfig small_config(std::size_t n, std::size_t rounds) {
  EngineConfig c;
  c.population_size = n;
  c.total_steps = rounds * 20;
  c.seed = 123;
  return c;
}

Solution evaluated(std::size_t id, std::vector<double> f, std::uint8_t tag = 0) {
  Solution s;
  s.id = id;
  s.hyperparams = HyperparamVector{{id % 11, 0, 0}};
  s.checkpoint.bytes = {tag};
  s.objectives = ObjectiveVector(std::move(f));
  return s;
}

// Toy task whose evaluation is NaN for roughly half of the lineages.
class FlakyTask final : public tasks::TrainableTask {
 public:
  std::string name() const override { return "flaky"; }
  std::size_t num_objectives() const override { return 2; }
  std::vector<std::string> objective_names() const override { return inner_.objective_names(); }
  const SearchSpace& search_space() const override { return inner_.search_space(); }
  std::size_t steps_per_epoch() const override { return inner_.steps_per_epoch(); }
  double seconds_per_step() const override { return inner_.seconds_per_step(); }
  tasks::Checkpoint init(Rng& rng) const override { return inner_.init(rng); }
  tasks::Checkpoint train(const tasks::Checkpoint& c, const HyperparamVector& h,
                          std::size_t n) const override {
    return inner_.train(c, h, n);
  }
  std::vector<double> evaluate(const tasks::Checkpoint& c) const override {
    if (tasks::ToyQuadraticTask::decode(c).seed % 2 == 1) {
      return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    return inner_.evaluate(c);
  }
  std::uint64_t trained_steps(const tasks::Checkpoint& c) const override {
    return inner_.trained_steps(c);
  }

 private:
  tasks::ToyQuadraticTask inner_;
};

TEST(Explore, ShiftAndClamp) {
  EXPECT_EQ(apply_shift(5, 2, 10), 7u);
  EXPECT_EQ(apply_shift(0, -3, 10), 0u);
  EXPECT_EQ(apply_shift(9, 3, 10), 9u);
}

TEST(Explore, WithoutResamplingStaysInNeighbourhood) {
  const auto task = toy();
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto h = task.search_space().sample_uniform(rng);
    const auto g = explore(h, task.search_space(), 0.0, rng);
    ASSERT_TRUE(task.search_space().contains(g));
    for (std::size_t j = 0; j < h.size(); ++j) {
      EXPECT_LE(std::abs(static_cast<long>(g[j]) - static_cast<long>(h[j])), 3);
    }
  }
}

TEST(Explore, FullResamplingIsUniform) {
  const SearchSpace space({Domain::linear("a", 0, 1, 5)});
  Rng rng(2);
  std::vector<int> hist(5);
  const int n = 50000;
  for (int i = 0; i < n; ++i) ++hist[explore(HyperparamVector{{0}}, space, 1.0, rng)[0]];
  for (int c : hist) EXPECT_NEAR(c, n / 5.0, 4 * std::sqrt(n * 0.2 * 0.8));
}

TEST(ExploreRandom, ChangeRateMatchesOneOverP) {
  std::vector<Domain> d;
  for (int j = 0; j < 5; ++j) d.push_back(Domain::linear("x" + std::to_string(j), 0, 1, 4));
  const SearchSpace space(d);
  Rng rng(3);
  const int n = 100000;
  const HyperparamVector h{{1, 1, 1, 1, 1}};
  std::vector<int> changed(5);
  for (int i = 0; i < n; ++i) {
    const auto g = explore_random(h, space, rng);
    for (int j = 0; j < 5; ++j) changed[j] += g[j] != h[j];
  }
  const double p = 0.2 * 0.75;
  for (int c : changed) EXPECT_NEAR(c, n * p, 3 * std::sqrt(n * p * (1 - p)));
}

TEST(ExploreRandom, SingleCoordinateAlwaysResampled) {
  const SearchSpace space({Domain::linear("a", 0, 1, 1000)});
  Rng rng(4);
  int same = 0;
  for (int i = 0; i < 1000; ++i) same += explore_random(HyperparamVector{{500}}, space, rng)[0] == 500;
  EXPECT_LT(same, 10);
}

TEST(SortPopulation, Examples) {
  Rng rng(5);
  const PopulationRanker greedy(Ranking{}, 2, false, rng);
  const std::vector<Solution> nd{evaluated(0, {0.2, 0.9}), evaluated(1, {0.9, 0.1}),
                                 evaluated(2, {0.5, 0.5})};
  EXPECT_EQ(sort_population(nd, greedy, rng).front(), 1u);

  Ranking so;
  so.kind = RankingKind::kSingleObjective;
  so.objective = 0;
  const PopulationRanker single(so, 2, false, rng);
  const std::vector<Solution> pop{evaluated(0, {0.1, 0}), evaluated(1, {0.9, 0}),
                                  evaluated(2, {0.5, 0})};
  EXPECT_EQ(sort_population(pop, single, rng), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(SortPopulation, UnevaluatedSolutionIsError) {
  Rng rng(6);
  const PopulationRanker r(Ranking{}, 2, false, rng);
  std::vector<Solution> pop{evaluated(0, {1, 1}), Solution{}};
  EXPECT_THROW(sort_population(pop, r, rng), ContractError);
}

TEST(SortPopulation, ScalarizedRankingPutsFeasibleFirst) {
  Rng rng(7);
  Ranking so;
  so.kind = RankingKind::kSingleObjective;
  const PopulationRanker r(so, 2, true, rng);
  auto pop = std::vector<Solution>{evaluated(0, {5, 0}), evaluated(1, {1, 0})};
  pop[0].constraint = ConstraintStatus::violated(1.0);
  EXPECT_EQ(sort_population(pop, r, rng), (std::vector<std::size_t>{1, 0}));
}

TEST(Exploit, CountsAndDonors) {
  Rng rng(8);
  std::vector<Solution> pop;
  for (std::size_t i = 0; i < 8; ++i) {
    pop.push_back(evaluated(i, {static_cast<double>(i), 0}, static_cast<std::uint8_t>(i)));
  }
  const std::vector<std::size_t> order{7, 6, 5, 4, 3, 2, 1, 0};
  const auto before = pop;
  const auto replaced = exploit(std::span<Solution>(pop), 25.0, order, rng,
                                [](const HyperparamVector& h) { return h; });
  ASSERT_EQ(replaced.size(), 2u);
  for (const auto& r : replaced) {
    EXPECT_TRUE(r.loser == 0 || r.loser == 1);
    EXPECT_TRUE(r.donor == 7 || r.donor == 6);
    EXPECT_EQ(pop[r.loser].checkpoint.bytes, before[r.donor].checkpoint.bytes);
    EXPECT_EQ(pop[r.loser].hyperparams, before[r.donor].hyperparams);
    EXPECT_EQ(pop[r.loser].generation, 1u);
  }
  for (std::size_t i = 2; i < 8; ++i) EXPECT_EQ(pop[i].checkpoint.bytes, before[i].checkpoint.bytes);
}

TEST(Exploit, SmallestPopulationHasForcedDonor) {
  Rng rng(9);
  std::vector<Solution> pop;
  for (std::size_t i = 0; i < 4; ++i) pop.push_back(evaluated(i, {double(i), 0}, std::uint8_t(i)));
  const std::vector<std::size_t> order{3, 2, 1, 0};
  const auto r = exploit(std::span<Solution>(pop), 25.0, order, rng,
                         [](const HyperparamVector& h) { return h; });
  EXPECT_EQ(r, (std::vector<Replacement>{{0, 3}}));
}

TEST(Exploit, TruncationCountRule) {
  EXPECT_EQ(truncation_count(32, 25), 8u);
  EXPECT_EQ(truncation_count(8, 25), 2u);
  EXPECT_EQ(truncation_count(4, 10), 0u);
  EXPECT_EQ(truncation_count(32, 10), 3u);
  EXPECT_EQ(truncation_count(32, 50), 16u);
}

TEST(EngineConfig, Validation) {
  const auto task = toy();
  auto c = small_config(8, 2);
  EXPECT_NO_THROW(c.validate(task));
  c.truncation_percent = 0;
  EXPECT_THROW(c.validate(task), ContractError);
  c.truncation_percent = 60;
  EXPECT_THROW(c.validate(task), ContractError);
  c = small_config(3, 2);
  EXPECT_THROW(c.validate(task), ContractError);
  c = small_config(8, 2);
  c.total_steps = 30;
  EXPECT_THROW(c.validate(task), ContractError);
  c.mode = Mode::kAsynchronous;
  EXPECT_NO_THROW(c.validate(task));
  c = small_config(8, 2);
  c.ranking = Ranking{};
  c.ranking.kind = RankingKind::kSingleObjective;
  c.ranking.objective = 2;
  EXPECT_THROW(c.validate(task), ContractError);
}

TEST(RunPbt, EventArithmeticSmallestCase) {
  const auto task = toy();
  const auto result = run_pbt(small_config(4, 2), task);
  std::map<std::size_t, int> evals;
  int exploits = 0;
  for (const auto& e : result.log.events()) {
    if (e.kind == EventKind::kEval) ++evals[e.sol];
    if (e.kind == EventKind::kExploit) ++exploits;
  }
  ASSERT_EQ(evals.size(), 4u);
  for (const auto& [sol, count] : evals) EXPECT_EQ(count, 2);
  EXPECT_GE(exploits, 1);
  EXPECT_EQ(result.population.size(), 4u);
  EXPECT_DOUBLE_EQ(result.duration_s, 40 * task.seconds_per_step());
}

TEST(RunPbt, EightReplacementsPerRoundAtDefaults) {
  const auto task = toy();
  auto c = small_config(32, 5);
  const auto result = run_pbt(c, task);
  std::map<double, int> per_round;
  for (const auto& e : result.log.events()) {
    if (e.kind == EventKind::kExploit) ++per_round[e.t];
  }
  ASSERT_EQ(per_round.size(), 4u);
  for (const auto& [t, n] : per_round) EXPECT_EQ(n, 8);
}

TEST(RunPbt, SynchronousRunsAreByteIdentical) {
  const auto task = toy();
  auto c = small_config(16, 4);
  c.workers = 4;
  const auto a = run_pbt(c, task);
  c.workers = 1;
  const auto b = run_pbt(c, task);
  EXPECT_EQ(a.log.to_jsonl(), b.log.to_jsonl());
  c.seed = 124;
  EXPECT_NE(run_pbt(c, task).log.to_jsonl(), a.log.to_jsonl());
}

TEST(RunPbt, InvariantsHoldEveryRound) {
  const auto task = toy();
  auto c = small_config(16, 6);
  const auto result = run_pbt(c, task);
  std::set<std::size_t> ids;
  for (const auto& e : result.log.events()) {
    ids.insert(e.sol);
    if (e.kind == EventKind::kEval || e.kind == EventKind::kExploit) {
      EXPECT_TRUE(task.search_space().contains(HyperparamVector{e.hp}));
    }
  }
  EXPECT_EQ(ids.size(), 16u);
  for (const auto& s : result.population) EXPECT_EQ(s.step, c.total_steps);
}

TEST(RunPbt, SingleObjectiveNeverReplacesItsBest) {
  const auto task = toy();
  for (std::size_t obj : {0u, 1u}) {
    auto c = small_config(16, 6);
    c.ranking.kind = RankingKind::kSingleObjective;
    c.ranking.objective = obj;
    const auto log = run_pbt(c, task).log;
    std::map<double, std::pair<double, std::size_t>> best;  // t -> (f_obj, sol)
    for (const auto& e : log.events()) {
      if (e.kind != EventKind::kEval) continue;
      auto it = best.find(e.t);
      if (it == best.end() || e.f[obj] > it->second.first) best[e.t] = {e.f[obj], e.sol};
    }
    for (const auto& e : log.events()) {
      if (e.kind == EventKind::kExploit) {
        EXPECT_NE(e.sol, best.at(e.t).second);
      }
    }
  }
}

TEST(RunPbt, ZeroTruncationLogsWarning) {
  const auto task = toy();
  auto c = small_config(4, 3);
  c.truncation_percent = 10;
  const auto log = run_pbt(c, task).log;
  EXPECT_EQ(log.count(EventKind::kWarning), 2u);
  EXPECT_EQ(log.count(EventKind::kExploit), 0u);
}

TEST(RunPbt, NonFiniteEvaluationBecomesErrorEvent) {
  const FlakyTask task;
  auto c = small_config(8, 3);
  const auto result = run_pbt(c, task);
  const auto errors = result.log.count(EventKind::kError);
  EXPECT_GT(errors, 0u);
  EXPECT_EQ(errors + result.log.count(EventKind::kEval), 24u);
  for (const auto& e : result.log.events()) {
    if (e.kind == EventKind::kError) {
      EXPECT_FALSE(e.message.empty());
    }
  }
}

TEST(RunPbt, AsynchronousModeCompletesEveryLineage) {
  const auto task = toy();
  for (std::size_t workers : {1u, 4u}) {
    auto c = small_config(8, 5);
    c.mode = Mode::kAsynchronous;
    c.workers = workers;
    const auto result = run_pbt(c, task);
    std::map<std::size_t, int> evals;
    for (const auto& e : result.log.events()) {
      if (e.kind == EventKind::kEval) ++evals[e.sol];
    }
    ASSERT_EQ(evals.size(), 8u);
    for (const auto& [sol, n] : evals) EXPECT_EQ(n, 5);
    EXPECT_EQ(result.population.size(), 8u);
  }
}

TEST(RunPbt, EveryRankingRuns) {
  const auto task = toy();
  for (auto kind : {RankingKind::kNdGreedySubset, RankingKind::kNdCrowding,
                    RankingKind::kRandomScalarization, RankingKind::kMaxScalarization,
                    RankingKind::kSingleObjective}) {
    auto c = small_config(8, 3);
    c.ranking.kind = kind;
    EXPECT_EQ(run_pbt(c, task).log.count(EventKind::kEval), 24u);
  }
}

TEST(WorkerPool, ParallelForCoversEveryIndex) {
  WorkerPool pool(4);
  std::vector<std::atomic<int>> hits(100);
  pool.parallel_for(100, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(WorkerPool, FirstErrorIsRethrown) {
  for (std::size_t w : {1u, 3u}) {
    WorkerPool pool(w);
    EXPECT_THROW(pool.parallel_for(10, [](std::size_t i) {
      if (i == 4) throw std::runtime_error("boom");
    }),
                 std::runtime_error);
  }
}

TEST(Stores, PopulationUpdatesAreVisibleInSnapshots) {
  PopulationStore store({evaluated(0, {1, 1}), evaluated(1, {0, 0})});
  store.update(1, [](Solution& s) { s.step = 40; });
  EXPECT_EQ(store.get(1).step, 40u);
  EXPECT_EQ(store.snapshot().size(), 2u);
}

TEST(Stores, CheckpointStoreFlushesOneFilePerKey) {
  CheckpointStore store;
  store.put(3, tasks::Checkpoint{{1, 2, 3}});
  store.put(5, tasks::Checkpoint{{4}});
  EXPECT_TRUE(store.contains(3));
  EXPECT_FALSE(store.contains(4));
  const auto dir = std::filesystem::temp_directory_path() / "mopbt_store_test";
  std::filesystem::remove_all(dir);
  store.flush(dir);
  EXPECT_EQ(tasks::load_checkpoint(dir / "3.bin").bytes, (std::vector<std::uint8_t>{1, 2, 3}));
  EXPECT_TRUE(std::filesystem::exists(dir / "5.bin"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mopbt::engine
