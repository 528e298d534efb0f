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
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mopbt/io/analysis.hpp"
#include "mopbt/io/config.hpp"
#include "mopbt/io/svg.hpp"
#include "mopbt/io/text.hpp"

namespace mopbt::io {

inline constexpr const char* kManifestFile = "experiment.json";

struct PlannedRun {
  const AlgorithmSpec* spec = nullptr;
  std::string run_id;
  std::uint64_t seed = 0;
};

/// Run ids are "<label>-s<i>". Seed i is shared across algorithms so every
/// method sees the same random streams for a given replicate.
inline std::vector<PlannedRun> plan_runs(const ExperimentConfig& cfg, bool pbt_phase) {
  std::vector<PlannedRun> out;
  for (const auto& spec : cfg.algorithms) {
    if ((spec.kind == "pbt") != pbt_phase) continue;
    for (std::size_t i = 0; i < spec.n_seeds; ++i) {
      out.push_back({&spec, spec.label + "-s" + std::to_string(i), cfg.seed + i});
    }
  }
  return out;
}

namespace detail {

inline nlohmann::ordered_json manifest_json(const ExperimentConfig& cfg,
                                            const tasks::TrainableTask& task,
                                            const std::vector<RunRecord>& runs,
                                            const ExperimentMetrics* m) {
  nlohmann::ordered_json j;
  j["task"] = cfg.task;
  j["num_objectives"] = task.num_objectives();
  j["objective_names"] = task.objective_names();
  j["reference_rho"] = cfg.reference_rho;
  j["coverage_lines"] = cfg.coverage_lines;
  j["mode"] = cfg.mode == engine::Mode::kSynchronous ? "sync" : "async";
  j["seed"] = cfg.seed;
  auto& list = j["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : runs) {
    list.push_back({{"run_id", r.run_id},
                    {"label", r.label},
                    {"kind", r.kind},
                    {"seed", r.seed},
                    {"log", "runs/" + r.run_id + ".jsonl"},
                    {"duration_s", r.duration_s}});
  }
  if (m != nullptr) {
    j["reference_point"] = m->reference.r.values();
    j["hv_star"] = m->hv_star;
  }
  return j;
}

inline void write_run_outputs(const std::filesystem::path& dir, const RunRecord& record,
                              const engine::RunResult& result, bool save_checkpoints) {
  write_text(dir / "runs" / (record.run_id + ".jsonl"), record.log.to_jsonl());
  if (!save_checkpoints) return;
  const auto ckpt_dir = dir / "ckpt" / record.run_id;
  std::filesystem::create_directories(ckpt_dir);
  for (const auto& [id, ckpt] : result.checkpoints) {
    tasks::save_checkpoint(ckpt, ckpt_dir / (std::to_string(id) + ".bin"));
  }
}

}  // namespace detail

/// Writes per-run metric files, the pooled front, plots and the summary.
/// Returns the printable summary table.
inline std::string write_analysis(const std::filesystem::path& dir,
                                  const std::vector<RunRecord>& runs, std::size_t k,
                                  const std::vector<std::string>& objective_names,
                                  const ExperimentMetrics& m) {
  for (const auto& r : m.runs) {
    write_text(dir / "metrics" / (r.run_id + ".csv"), metrics_csv(r.curve));
    write_text(dir / "metrics" / (r.run_id + "_work.csv"), metrics_work_csv(r.curve));
    std::vector<ObjectiveVector> front;
    for (const auto* e : r.front_events) front.emplace_back(e->f);
    write_text(dir / "plots" / (r.run_id + ".svg"),
               render_run_svg(r.run_id, r.curve, front, objective_names));
  }
  (void)runs;
  write_text(dir / "fronts.csv", fronts_csv(m, k));
  const auto rows = summarize(m);
  write_text(dir / "summary.csv", summary_csv(rows));
  return summary_table(rows);
}

/// Executes an experiment and writes every artifact under cfg.out_dir.
/// Returns 0 on success, 1 on a runtime failure, 2 on a configuration error.
inline int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  std::unique_ptr<tasks::TrainableTask> task;
  try {
    task = tasks::make_task(cfg.task);
    validate_experiment(cfg, *task);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  const auto& dir = cfg.out_dir;
  std::vector<RunRecord> records;
  std::string failure;
  try {
    std::filesystem::create_directories(dir);
    std::optional<double> pbt_budget;
    for (const bool pbt_phase : {true, false}) {
      if (failure.size()) break;
      const auto plan = plan_runs(cfg, pbt_phase);
      std::vector<std::future<engine::RunResult>> pending;
      auto launch = [&](const PlannedRun& p) {
        return execute_run(*p.spec, cfg, *task, p.seed, pbt_budget);
      };
      for (const auto& p : plan) {
        pending.push_back(std::async(cfg.parallel_runs ? std::launch::async : std::launch::deferred,
                                     launch, p));
      }
      for (std::size_t i = 0; i < plan.size(); ++i) {
        try {
          engine::RunResult result = pending[i].get();
          RunRecord record{plan[i].run_id, plan[i].spec->label, plan[i].spec->kind, plan[i].seed,
                           std::move(result.log), result.duration_s};
          result.log = RunLog{};
          detail::write_run_outputs(dir, record, result, cfg.save_checkpoints);
          out << "finished " << record.run_id << " (" << record.log.size() << " events)\n";
          records.push_back(std::move(record));
        } catch (const std::exception& e) {
          if (failure.empty()) failure = plan[i].run_id + ": " + e.what();
        }
      }
      if (pbt_phase && !records.empty()) {
        double slowest = 0.0;
        for (const auto& r : records) slowest = std::max(slowest, r.duration_s);
        pbt_budget = slowest;
      }
    }
  } catch (const std::exception& e) {
    if (failure.empty()) failure = e.what();
  }

  std::optional<ExperimentMetrics> m;
  std::string table;
  if (failure.empty()) {
    try {
      m = analyze(records, task->num_objectives(), cfg.reference_rho, cfg.coverage_lines);
      table = write_analysis(dir, records, task->num_objectives(), task->objective_names(), *m);
    } catch (const std::exception& e) {
      failure = std::string("analysis failed: ") + e.what();
      m.reset();
    }
  }
  try {
    write_text(dir / kManifestFile,
               detail::manifest_json(cfg, *task, records, m ? &*m : nullptr).dump(2) + '\n');
  } catch (const std::exception& e) {
    if (failure.empty()) failure = e.what();
  }
  if (!failure.empty()) {
    err << "run failed: " << failure << '\n';
    return 1;
  }
  out << table;
  return 0;
}

/// Loaded experiment directory: manifest plus run logs.
struct LoadedExperiment {
  nlohmann::json manifest;
  std::vector<RunRecord> runs;
  std::size_t num_objectives = 0;
  std::vector<std::string> objective_names;
  double reference_rho = metrics::kDefaultReferenceRho;
  std::size_t coverage_lines = metrics::kDefaultCoverageLines;
};

inline LoadedExperiment load_experiment(const std::filesystem::path& dir) {
  LoadedExperiment x;
  x.manifest = nlohmann::json::parse(read_text(dir / kManifestFile));
  x.num_objectives = x.manifest.at("num_objectives").get<std::size_t>();
  x.objective_names = x.manifest.at("objective_names").get<std::vector<std::string>>();
  x.reference_rho = x.manifest.value("reference_rho", metrics::kDefaultReferenceRho);
  x.coverage_lines = x.manifest.value("coverage_lines", metrics::kDefaultCoverageLines);
  for (const auto& r : x.manifest.at("runs")) {
    RunRecord record;
    record.run_id = r.at("run_id").get<std::string>();
    record.label = r.at("label").get<std::string>();
    record.kind = r.at("kind").get<std::string>();
    record.seed = r.at("seed").get<std::uint64_t>();
    record.duration_s = r.at("duration_s").get<double>();
    std::ifstream in(dir / r.at("log").get<std::string>());
    if (!in) throw std::runtime_error("missing run log for " + record.run_id);
    record.log = RunLog::read_jsonl(in);
    x.runs.push_back(std::move(record));
  }
  return x;
}

/// Recomputes every metric from the stored logs and rewrites the derived files.
inline int report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  try {
    const LoadedExperiment x = load_experiment(dir);
    const auto m = analyze(x.runs, x.num_objectives, x.reference_rho, x.coverage_lines);
    out << write_analysis(dir, x.runs, x.num_objectives, x.objective_names, m);
    return 0;
  } catch (const std::exception& e) {
    err << "report failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mopbt::io
