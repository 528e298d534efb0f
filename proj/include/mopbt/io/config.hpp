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
#include <filesystem>
#include <future>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mopbt/baselines/mo_asha.hpp"
#include "mopbt/baselines/nsga2.hpp"
#include "mopbt/baselines/random_search.hpp"
#include "mopbt/engine/config.hpp"
#include "mopbt/engine/pbt.hpp"
#include "mopbt/engine/worker_pool.hpp"
#include "mopbt/tasks/registry.hpp"

namespace mopbt::io {

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgorithmSpec {
  std::string kind;   // pbt | random-search | mo-asha | nsga2
  std::string label;
  std::size_t n_seeds = 1;
  nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
  nlohmann::json task = {{"name", "toy-quadratic-mo"}};
  std::vector<AlgorithmSpec> algorithms;
  std::filesystem::path out_dir = "mopbt-out";
  std::size_t workers = engine::default_workers();
  std::uint64_t seed = 0;
  engine::Mode mode = engine::Mode::kSynchronous;
  std::size_t epochs = 100;
  std::optional<std::size_t> total_steps;  // overrides epochs
  double reference_rho = metrics::kDefaultReferenceRho;
  std::size_t coverage_lines = metrics::kDefaultCoverageLines;
  bool save_checkpoints = true;
  bool parallel_runs = false;

  std::size_t resolved_total_steps(const tasks::TrainableTask& task) const {
    return total_steps ? *total_steps : epochs * task.steps_per_epoch();
  }
};

namespace detail {

inline void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

inline const std::set<std::string>& allowed_keys(const std::string& kind) {
  static const std::set<std::string> pbt{
      "kind", "label", "n_seeds", "population_size", "truncation_percent",
      "ready_interval", "resample_probability", "ranking", "objective", "scalarizer",
      "parego_rho", "weights", "normalize_distances", "mutation", "constraints"};
  static const std::set<std::string> random{"kind", "label", "n_seeds", "n_trials",
                                            "ready_interval"};
  static const std::set<std::string> asha{"kind", "label", "n_seeds", "reduction_factor",
                                          "min_resource", "max_resource", "max_concurrent",
                                          "time_budget_s"};
  static const std::set<std::string> nsga{"kind", "label", "n_seeds", "population_size",
                                          "budget", "crossover_probability",
                                          "resample_probability", "mutation", "ready_interval"};
  if (kind == "pbt") return pbt;
  if (kind == "random-search") return random;
  if (kind == "mo-asha") return asha;
  if (kind == "nsga2") return nsga;
  throw ConfigError("unknown algorithm kind: " + kind);
}

inline engine::Mutation mutation_from(const nlohmann::json& p) {
  const auto m = get_or<std::string>(p, "mutation", "local");
  if (m == "local") return engine::Mutation::kLocal;
  if (m == "random") return engine::Mutation::kRandom;
  throw ConfigError("mutation must be \"local\" or \"random\"");
}

inline std::string default_label(const std::string& kind, const nlohmann::json& p) {
  if (kind != "pbt") return kind;
  const auto ranking = get_or<std::string>(p, "ranking", "nd-greedy");
  if (ranking == "nd-greedy") return "mo-pbt";
  if (ranking == "nd-crowding") return "mo-pbt-crowding";
  if (ranking == "single-objective") {
    return "so-pbt-f" + std::to_string(get_or<std::size_t>(p, "objective", 0) + 1);
  }
  if (ranking == "random-scalarization") {
    return "pbt-random-" + get_or<std::string>(p, "scalarizer", "parego");
  }
  if (ranking == "max-scalarization") {
    return "pbt-max-" + get_or<std::string>(p, "scalarizer", "golovin");
  }
  return "pbt-" + ranking;
}

}  // namespace detail

/// Parses an experiment file. Structural problems raise ConfigError;
/// checks against the task happen in validate_experiment.
inline ExperimentConfig parse_experiment(const nlohmann::json& j) {
  detail::check_keys(j,
                     {"task", "algorithms", "out_dir", "workers", "seed", "mode", "epochs",
                      "total_steps", "reference_rho", "coverage_lines", "save_checkpoints",
                      "parallel_runs"},
                     "experiment config");
  ExperimentConfig cfg;
  if (!j.contains("task")) throw ConfigError("experiment config needs a \"task\"");
  cfg.task = j.at("task");
  if (!cfg.task.is_object() || !cfg.task.contains("name")) {
    throw ConfigError("\"task\" must be an object with a \"name\"");
  }
  cfg.out_dir = detail::get_or<std::string>(j, "out_dir", cfg.out_dir.string());
  cfg.workers = detail::get_or<std::size_t>(j, "workers", cfg.workers);
  cfg.seed = detail::get_or<std::uint64_t>(j, "seed", cfg.seed);
  const auto mode = detail::get_or<std::string>(j, "mode", "sync");
  if (mode == "sync") cfg.mode = engine::Mode::kSynchronous;
  else if (mode == "async") cfg.mode = engine::Mode::kAsynchronous;
  else throw ConfigError("mode must be \"sync\" or \"async\"");
  cfg.epochs = detail::get_or<std::size_t>(j, "epochs", cfg.epochs);
  if (j.contains("total_steps")) cfg.total_steps = detail::get_or<std::size_t>(j, "total_steps", 0);
  cfg.reference_rho = detail::get_or<double>(j, "reference_rho", cfg.reference_rho);
  cfg.coverage_lines = detail::get_or<std::size_t>(j, "coverage_lines", cfg.coverage_lines);
  cfg.save_checkpoints = detail::get_or<bool>(j, "save_checkpoints", cfg.save_checkpoints);
  cfg.parallel_runs = detail::get_or<bool>(j, "parallel_runs", cfg.parallel_runs);

  if (!j.contains("algorithms") || !j.at("algorithms").is_array() || j.at("algorithms").empty()) {
    throw ConfigError("\"algorithms\" must be a non-empty array");
  }
  std::set<std::string> labels;
  for (const auto& a : j.at("algorithms")) {
    if (!a.is_object() || !a.contains("kind")) throw ConfigError("each algorithm needs a \"kind\"");
    AlgorithmSpec spec;
    spec.kind = detail::get_or<std::string>(a, "kind", "");
    detail::check_keys(a, detail::allowed_keys(spec.kind), "algorithm \"" + spec.kind + "\"");
    spec.label = detail::get_or<std::string>(a, "label", detail::default_label(spec.kind, a));
    spec.n_seeds = detail::get_or<std::size_t>(a, "n_seeds", 1);
    if (spec.n_seeds == 0) throw ConfigError("n_seeds must be positive");
    if (spec.label.empty() || spec.label.find_first_of("/\\,") != std::string::npos) {
      throw ConfigError("invalid algorithm label \"" + spec.label + "\"");
    }
    if (!labels.insert(spec.label).second) throw ConfigError("duplicate label " + spec.label);
    spec.params = a;
    cfg.algorithms.push_back(std::move(spec));
  }
  if (cfg.reference_rho < 0.0) throw ConfigError("reference_rho must be nonnegative");
  if (cfg.workers == 0) throw ConfigError("workers must be positive");
  return cfg;
}

inline engine::EngineConfig pbt_config(const AlgorithmSpec& spec, const ExperimentConfig& exp,
                                       const tasks::TrainableTask& task, std::uint64_t seed) {
  const auto& p = spec.params;
  engine::EngineConfig c;
  c.population_size = detail::get_or<std::size_t>(p, "population_size", c.population_size);
  c.truncation_percent = detail::get_or<double>(p, "truncation_percent", c.truncation_percent);
  c.ready_interval = detail::get_or<std::size_t>(p, "ready_interval", c.ready_interval);
  c.resample_probability =
      detail::get_or<double>(p, "resample_probability", c.resample_probability);
  c.total_steps = exp.resolved_total_steps(task);
  c.mutation = detail::mutation_from(p);
  c.constraints = detail::get_or<bool>(p, "constraints", false);
  c.mode = exp.mode;
  c.seed = seed;
  c.workers = exp.workers;

  const auto ranking = detail::get_or<std::string>(p, "ranking", "nd-greedy");
  try {
    c.ranking.kind = engine::ranking_kind_from_string(ranking);
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  c.ranking.objective = detail::get_or<std::size_t>(p, "objective", 0);
  c.ranking.weight_count = detail::get_or<std::size_t>(p, "weights", 100);
  c.ranking.normalize_distances = detail::get_or<bool>(p, "normalize_distances", false);
  const bool max_mode = c.ranking.kind == engine::RankingKind::kMaxScalarization;
  try {
    c.ranking.scalarizer.kind = scalarize::scalarizer_from_string(
        detail::get_or<std::string>(p, "scalarizer", max_mode ? "golovin" : "parego"));
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  c.ranking.scalarizer.parego_rho =
      detail::get_or<double>(p, "parego_rho", scalarize::kDefaultParegoRho);
  return c;
}

inline baselines::RandomSearchConfig random_search_config(const AlgorithmSpec& spec,
                                                          const ExperimentConfig& exp,
                                                          const tasks::TrainableTask& task,
                                                          std::uint64_t seed) {
  baselines::RandomSearchConfig c;
  c.n_trials = detail::get_or<std::size_t>(spec.params, "n_trials", c.n_trials);
  c.ready_interval = detail::get_or<std::size_t>(spec.params, "ready_interval", 0);
  c.total_steps = exp.resolved_total_steps(task);
  c.seed = seed;
  c.workers = exp.workers;
  return c;
}

inline baselines::AshaConfig asha_config(const AlgorithmSpec& spec, const ExperimentConfig& exp,
                                         const tasks::TrainableTask& task, std::uint64_t seed,
                                         std::optional<double> pbt_budget) {
  const auto& p = spec.params;
  baselines::AshaConfig c;
  c.reduction_factor = detail::get_or<std::size_t>(p, "reduction_factor", c.reduction_factor);
  c.min_resource = detail::get_or<std::size_t>(p, "min_resource", 0);
  c.max_resource = detail::get_or<std::size_t>(p, "max_resource", exp.resolved_total_steps(task));
  c.max_concurrent = detail::get_or<std::size_t>(p, "max_concurrent", c.max_concurrent);
  c.time_budget_s = pbt_budget ? *pbt_budget : detail::get_or<double>(p, "time_budget_s", 0.0);
  c.seed = seed;
  return c;
}

inline baselines::Nsga2Config nsga2_config(const AlgorithmSpec& spec, const ExperimentConfig& exp,
                                           const tasks::TrainableTask& task, std::uint64_t seed) {
  const auto& p = spec.params;
  baselines::Nsga2Config c;
  c.population_size = detail::get_or<std::size_t>(p, "population_size", c.population_size);
  c.budget = detail::get_or<std::size_t>(p, "budget", c.budget);
  c.crossover_probability =
      detail::get_or<double>(p, "crossover_probability", c.crossover_probability);
  c.resample_probability =
      detail::get_or<double>(p, "resample_probability", c.resample_probability);
  c.mutation = detail::mutation_from(p);
  c.ready_interval = detail::get_or<std::size_t>(p, "ready_interval", 0);
  c.total_steps = exp.resolved_total_steps(task);
  c.seed = seed;
  c.workers = exp.workers;
  return c;
}

inline bool has_pbt(const ExperimentConfig& cfg) {
  return std::any_of(cfg.algorithms.begin(), cfg.algorithms.end(),
                     [](const AlgorithmSpec& a) { return a.kind == "pbt"; });
}

/// Checks every algorithm against the task. Raises ConfigError.
inline void validate_experiment(const ExperimentConfig& cfg, const tasks::TrainableTask& task) {
  for (const auto& spec : cfg.algorithms) {
    try {
      if (spec.kind == "pbt") {
        const auto c = pbt_config(spec, cfg, task, cfg.seed);
        c.validate(task);
        if (c.constraints && !task.has_constraint()) {
          throw ConfigError("constraints requested but task " + task.name() + " has none");
        }
      } else if (spec.kind == "random-search") {
        random_search_config(spec, cfg, task, cfg.seed).validate(task);
      } else if (spec.kind == "mo-asha") {
        const bool pbt = has_pbt(cfg);
        if (!pbt && !spec.params.contains("time_budget_s")) {
          throw ConfigError("mo-asha needs \"time_budget_s\" when no pbt algorithm runs");
        }
        asha_config(spec, cfg, task, cfg.seed, pbt ? std::optional<double>(1.0) : std::nullopt)
            .validate(task);
      } else if (spec.kind == "nsga2") {
        nsga2_config(spec, cfg, task, cfg.seed).validate(task);
      }
    } catch (const ContractError& e) {
      throw ConfigError("algorithm " + spec.label + ": " + e.what());
    }
  }
  if (cfg.reference_rho < 0.0) throw ConfigError("reference_rho must be nonnegative");
}

/// Runs one (algorithm, seed) pair.
inline engine::RunResult execute_run(const AlgorithmSpec& spec, const ExperimentConfig& cfg,
                                     const tasks::TrainableTask& task, std::uint64_t seed,
                                     std::optional<double> pbt_budget) {
  if (spec.kind == "pbt") return engine::run_pbt(pbt_config(spec, cfg, task, seed), task);
  if (spec.kind == "random-search") {
    return baselines::random_search(task, random_search_config(spec, cfg, task, seed));
  }
  if (spec.kind == "mo-asha") {
    return baselines::mo_asha(task, asha_config(spec, cfg, task, seed, pbt_budget));
  }
  if (spec.kind == "nsga2") return baselines::nsga2(task, nsga2_config(spec, cfg, task, seed));
  throw ConfigError("unknown algorithm kind: " + spec.kind);
}

}  // namespace mopbt::io
