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
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mopbt/tasks/checkpoint.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::tasks {

struct ToyQuadraticParams {
  std::size_t num_objectives = 2;  // 2 or 3
  double noise_sigma = 0.01;
  std::size_t steps_per_epoch = 10;
  double seconds_per_step = 0.01;
  std::size_t weight_values = 11;  // linear grid on [0, 1]
  std::size_t lr_values = 10;      // log grid on [1e-3, 1]
  double init_scale = 0.5;         // theta_0 ~ U(-init_scale, init_scale)^2
  std::optional<double> constraint_threshold;  // feasible iff f1 >= threshold
};

/// Two-parameter model pulled towards K anchor points.
///
/// State theta in R^2. Objective i is 1.2 - |theta - a_i|^2 with anchors
/// a_1 = (0, 0), a_2 = (1, 1) and, for K = 3, a_3 = (1, 0). Training takes
/// gradient steps on sum_i w_i |theta - a_i|^2 with weights w_i and step size
/// taken from the hyperparameters, plus N(0, sigma^2) noise per coordinate
/// and step. Theta is kept inside a bounding box so divergent step sizes stay
/// finite.
class ToyQuadraticTask final : public TrainableTask {
 public:
  static constexpr std::uint8_t kVersion = 1;
  static constexpr double kPeak = 1.2;
  static constexpr double kThetaBound = 10.0;

  explicit ToyQuadraticTask(ToyQuadraticParams params = {},
                            std::string name = "toy-quadratic-mo")
      : params_(std::move(params)), name_(std::move(name)) {
    require(params_.num_objectives == 2 || params_.num_objectives == 3,
            "toy-quadratic supports 2 or 3 objectives");
    require(params_.noise_sigma >= 0.0, "noise sigma must be nonnegative");
    require(params_.steps_per_epoch >= 1, "steps per epoch must be positive");
    std::vector<Domain> domains;
    for (std::size_t i = 0; i < params_.num_objectives; ++i) {
      domains.push_back(Domain::linear("w" + std::to_string(i + 1), 0.0, 1.0,
                                       params_.weight_values));
    }
    domains.push_back(Domain::log_spaced("lr", 1e-3, 1.0, params_.lr_values));
    space_ = SearchSpace(std::move(domains));
  }

  std::string name() const override { return name_; }
  std::size_t num_objectives() const override { return params_.num_objectives; }

  std::vector<std::string> objective_names() const override {
    std::vector<std::string> names{"fit_origin", "fit_ones"};
    if (params_.num_objectives == 3) names.emplace_back("fit_x_axis");
    return names;
  }

  const SearchSpace& search_space() const override { return space_; }
  std::size_t steps_per_epoch() const override { return params_.steps_per_epoch; }
  double seconds_per_step() const override { return params_.seconds_per_step; }
  const ToyQuadraticParams& params() const noexcept { return params_; }

  static std::array<double, 2> anchor(std::size_t i) {
    static constexpr std::array<std::array<double, 2>, 3> kAnchors{
        {{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}}};
    return kAnchors[i];
  }

  /// Checkpoint holding an explicit theta.
  static Checkpoint make_checkpoint(std::array<double, 2> theta,
                                    std::uint64_t seed = 0, std::uint64_t steps = 0) {
    ByteWriter w;
    w.u8(kVersion);
    w.u64(seed);
    w.u64(steps);
    w.f64(theta[0]);
    w.f64(theta[1]);
    return std::move(w).finish();
  }

  struct State {
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::array<double, 2> theta{};
  };

  static State decode(const Checkpoint& c) {
    ByteReader r(c);
    if (r.u8() != kVersion) throw ContractError("toy-quadratic checkpoint version mismatch");
    State s;
    s.seed = r.u64();
    s.steps = r.u64();
    s.theta = {r.f64(), r.f64()};
    if (!r.done()) throw ContractError("trailing bytes in toy-quadratic checkpoint");
    return s;
  }

  Checkpoint init(Rng& rng) const override {
    const std::uint64_t seed = rng();
    std::uniform_real_distribution<double> u(-params_.init_scale, params_.init_scale);
    const double a = u(rng);
    const double b = u(rng);
    return make_checkpoint({a, b}, seed, 0);
  }

  Checkpoint train(const Checkpoint& ckpt, const HyperparamVector& h,
                   std::size_t n_steps) const override {
    State s = decode(ckpt);
    const std::vector<double> hv = space_.decode(h);
    const std::size_t k = params_.num_objectives;
    const double lr = hv[k];
    const NoiseStream noise(s.seed);
    for (std::size_t n = 0; n < n_steps; ++n) {
      std::array<double, 2> grad{0.0, 0.0};
      for (std::size_t i = 0; i < k; ++i) {
        const auto a = anchor(i);
        grad[0] += 2.0 * hv[i] * (s.theta[0] - a[0]);
        grad[1] += 2.0 * hv[i] * (s.theta[1] - a[1]);
      }
      for (std::size_t d = 0; d < 2; ++d) {
        double next = s.theta[d] - lr * grad[d];
        if (params_.noise_sigma > 0.0) next += params_.noise_sigma * noise.normal(s.steps, d);
        s.theta[d] = std::clamp(next, -kThetaBound, kThetaBound);
      }
      ++s.steps;
    }
    return make_checkpoint(s.theta, s.seed, s.steps);
  }

  std::vector<double> evaluate(const Checkpoint& ckpt) const override {
    return objectives_at(decode(ckpt).theta);
  }

  std::vector<double> objectives_at(std::array<double, 2> theta) const {
    std::vector<double> f(params_.num_objectives);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto a = anchor(i);
      const double dx = theta[0] - a[0];
      const double dy = theta[1] - a[1];
      f[i] = kPeak - (dx * dx + dy * dy);
    }
    return f;
  }

  std::uint64_t trained_steps(const Checkpoint& ckpt) const override {
    return decode(ckpt).steps;
  }

  bool has_constraint() const override { return params_.constraint_threshold.has_value(); }

  ConstraintStatus constraint(const ObjectiveVector& f) const override {
    if (!params_.constraint_threshold) return ConstraintStatus::satisfied();
    return ConstraintStatus::from_violation(
        std::max(0.0, *params_.constraint_threshold - f[0]));
  }

 private:
  ToyQuadraticParams params_;
  std::string name_;
  SearchSpace space_;
};

}  // namespace mopbt::tasks
