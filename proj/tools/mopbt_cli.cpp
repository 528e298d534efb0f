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

// mopbt command line: run an experiment from a JSON config, or re-derive
// the metrics of a finished experiment directory.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mopbt/io/experiment.hpp"

namespace {

int run_command(const std::string& path, const CLI::App& cmd, std::uint64_t seed,
                std::size_t workers, const std::string& out_dir, const std::string& mode,
                bool parallel_runs) {
  mopbt::io::ExperimentConfig cfg;
  try {
    std::ifstream in(path);
    if (!in) throw mopbt::io::ConfigError("cannot open " + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw mopbt::io::ConfigError(std::string("invalid JSON: ") + e.what());
    }
    cfg = mopbt::io::parse_experiment(j);
    if (cmd.count("--seed")) cfg.seed = seed;
    if (cmd.count("--workers")) {
      if (workers == 0) throw mopbt::io::ConfigError("--workers must be positive");
      cfg.workers = workers;
    }
    if (cmd.count("--out-dir")) cfg.out_dir = out_dir;
    if (cmd.count("--mode")) {
      cfg.mode = mode == "async" ? mopbt::engine::Mode::kAsynchronous
                                 : mopbt::engine::Mode::kSynchronous;
    }
    if (parallel_runs) cfg.parallel_runs = true;
  } catch (const mopbt::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return mopbt::io::run_experiment(cfg, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective population based training"};
  app.require_subcommand(1);

  std::string config_path, out_dir, mode = "sync", report_dir;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  bool parallel_runs = false;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment JSON file")->required();
  run->add_option("--seed", seed, "Global seed");
  run->add_option("--workers", workers, "Worker threads per run (default: MOPBT_WORKERS)");
  run->add_option("--out-dir", out_dir, "Output directory");
  run->add_option("--mode", mode, "Engine mode")->check(CLI::IsMember({"sync", "async"}));
  run->add_flag("--parallel-runs", parallel_runs, "Run seeds and algorithms concurrently");

  auto* rep = app.add_subcommand("report", "Recompute metrics of an experiment directory");
  rep->add_option("out_dir", report_dir, "Experiment output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) return run_command(config_path, *run, seed, workers, out_dir, mode, parallel_runs);
  return mopbt::io::report(report_dir, std::cout, std::cerr);
}
