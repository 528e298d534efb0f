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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mopbt/io/text.hpp"
#include "mopbt/metrics/archive.hpp"
#include "mopbt/metrics/coverage.hpp"
#include "mopbt/metrics/curve.hpp"
#include "mopbt/metrics/hypervolume.hpp"
#include "mopbt/metrics/pareto.hpp"
#include "mopbt/run_log.hpp"

namespace mopbt::io {

struct RunRecord {
  std::string run_id;
  std::string label;
  std::string kind;
  std::uint64_t seed = 0;
  RunLog log;
  double duration_s = 0.0;
};

struct RunMetrics {
  std::string run_id;
  std::string label;
  double final_hv = 0.0;
  std::optional<double> coverage;
  std::vector<metrics::CurvePoint> curve;
  std::vector<const Event*> front_events;  // non-dominated evaluations
};

struct ExperimentMetrics {
  metrics::ReferencePoint reference;
  double hv_star = 0.0;
  std::vector<RunMetrics> runs;
};

/// Evaluation events of `log` that are not dominated by another evaluation
/// of the same run (first occurrence of duplicates).
inline std::vector<const Event*> front_events(const RunLog& log) {
  const auto evals = log.evaluations();
  std::vector<ObjectiveVector> points;
  points.reserve(evals.size());
  for (const auto* e : evals) points.emplace_back(e->f);
  std::vector<const Event*> out;
  for (std::size_t i : metrics::pareto_filter_indices(points)) out.push_back(evals[i]);
  return out;
}

/// Pools every run into one archive, derives the reference point and HV*
/// from it, then scores each run against them.
inline ExperimentMetrics analyze(const std::vector<RunRecord>& runs, std::size_t k,
                                 double rho = metrics::kDefaultReferenceRho,
                                 std::size_t coverage_lines = metrics::kDefaultCoverageLines) {
  metrics::FrontArchive archive;
  for (const auto& run : runs) archive.add_run(run.run_id, run.log);
  if (archive.empty()) throw std::runtime_error("no evaluations to analyze");

  ExperimentMetrics out;
  out.reference = metrics::compute_reference_point(archive, rho);
  out.hv_star = metrics::optimal_hypervolume(archive, out.reference);
  for (const auto& run : runs) {
    RunMetrics m;
    m.run_id = run.run_id;
    m.label = run.label;
    m.front_events = front_events(run.log);
    std::vector<ObjectiveVector> front;
    for (const auto* e : m.front_events) front.emplace_back(e->f);
    m.final_hv = metrics::hypervolume(front, out.reference);
    if (k == 2) m.coverage = metrics::coverage(front, out.reference, coverage_lines);
    m.curve = metrics::log_hv_gap_curve(run.log, out.hv_star, out.reference);
    out.runs.push_back(std::move(m));
  }
  return out;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

/// Mean and population standard deviation.
inline MeanStd mean_std(const std::vector<double>& v) {
  if (v.empty()) return {};
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(v.size()))};
}

struct AlgorithmSummary {
  std::string label;
  std::size_t runs = 0;
  MeanStd hv;  // x100
  std::optional<MeanStd> coverage;  // x100, K = 2 only
};

/// Per-label aggregates in order of first appearance.
inline std::vector<AlgorithmSummary> summarize(const ExperimentMetrics& m) {
  std::vector<std::string> labels;
  for (const auto& r : m.runs) {
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
  }
  std::vector<AlgorithmSummary> out;
  for (const auto& label : labels) {
    std::vector<double> hv, cov;
    bool has_coverage = true;
    for (const auto& r : m.runs) {
      if (r.label != label) continue;
      hv.push_back(100.0 * r.final_hv);
      if (r.coverage) cov.push_back(100.0 * *r.coverage);
      else has_coverage = false;
    }
    AlgorithmSummary s{label, hv.size(), mean_std(hv), std::nullopt};
    if (has_coverage) s.coverage = mean_std(cov);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::string summary_csv(const std::vector<AlgorithmSummary>& rows) {
  const bool coverage = !rows.empty() && rows.front().coverage.has_value();
  std::ostringstream out;
  out << "algorithm,runs,hv_mean,hv_std";
  if (coverage) out << ",coverage_mean,coverage_std";
  out << '\n';
  for (const auto& r : rows) {
    out << r.label << ',' << r.runs << ',' << format_double(r.hv.mean) << ','
        << format_double(r.hv.std);
    if (coverage) {
      out << ',' << format_double(r.coverage->mean) << ',' << format_double(r.coverage->std);
    }
    out << '\n';
  }
  return out.str();
}

inline std::string summary_table(const std::vector<AlgorithmSummary>& rows) {
  const bool coverage = !rows.empty() && rows.front().coverage.has_value();
  std::ostringstream out;
  out << std::left << std::setw(28) << "algorithm" << std::setw(6) << "runs"
      << std::setw(22) << "hypervolume x100";
  if (coverage) out << "coverage x100";
  out << '\n' << std::fixed << std::setprecision(2);
  for (const auto& r : rows) {
    std::ostringstream hv;
    hv << std::fixed << std::setprecision(2) << r.hv.mean << " +- " << r.hv.std;
    out << std::setw(28) << r.label << std::setw(6) << r.runs << std::setw(22) << hv.str();
    if (coverage) out << r.coverage->mean << " +- " << r.coverage->std;
    out << '\n';
  }
  return out.str();
}

inline std::string metrics_csv(const std::vector<metrics::CurvePoint>& curve) {
  std::string out = "time_s,hv,log_gap\n";
  for (const auto& c : curve) {
    out += format_double(c.time) + ',' + format_double(c.hv) + ',' + format_double(c.log_gap) + '\n';
  }
  return out;
}

inline std::string metrics_work_csv(const std::vector<metrics::CurvePoint>& curve) {
  std::string out = "train_steps,hv,log_gap\n";
  for (const auto& c : curve) {
    out += std::to_string(c.work) + ',' + format_double(c.hv) + ',' + format_double(c.log_gap) + '\n';
  }
  return out;
}

/// Pooled front export: run_id,time_s,step,f1,...,fK.
inline std::string fronts_csv(const ExperimentMetrics& m, std::size_t k) {
  std::string out = "run_id,time_s,step";
  for (std::size_t i = 1; i <= k; ++i) out += ",f" + std::to_string(i);
  out += '\n';
  for (const auto& r : m.runs) {
    for (const auto* e : r.front_events) {
      out += r.run_id + ',' + format_double(e->t) + ',' + std::to_string(e->step);
      for (double v : e->f) out += ',' + format_double(v);
      out += '\n';
    }
  }
  return out;
}

}  // namespace mopbt::io
