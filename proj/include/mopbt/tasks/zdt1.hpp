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
#include <utility>
#include <vector>

#include "mopbt/tasks/checkpoint.hpp"
#include "mopbt/tasks/task.hpp"

namespace mopbt::tasks {

struct Zdt1Params {
  std::size_t dimensions = 5;
  std::size_t values_per_dimension = 21;
  double sigma0 = 0.1;
  std::size_t steps_per_epoch = 10;
  double seconds_per_step = 0.01;
};

/// ZDT1 with objectives negated for maximization. The "model" is the
/// decoded hyperparameter vector of the last training call; training for s
/// steps in total shrinks the additive evaluation noise to
/// sigma0 / sqrt(1 + s).
class Zdt1NoisyTask final : public TrainableTask {
 public:
  static constexpr std::uint8_t kVersion = 1;

  explicit Zdt1NoisyTask(Zdt1Params params = {}) : params_(params) {
    require(params_.dimensions >= 2, "zdt1 needs at least two dimensions");
    require(params_.sigma0 >= 0.0, "sigma0 must be nonnegative");
    std::vector<Domain> domains;
    for (std::size_t j = 0; j < params_.dimensions; ++j) {
      domains.push_back(Domain::linear("x" + std::to_string(j + 1), 0.0, 1.0,
                                       params_.values_per_dimension));
    }
    space_ = SearchSpace(std::move(domains));
  }

  std::string name() const override { return "zdt1-noisy"; }
  std::size_t num_objectives() const override { return 2; }
  std::vector<std::string> objective_names() const override { return {"neg_f1", "neg_f2"}; }
  const SearchSpace& search_space() const override { return space_; }
  std::size_t steps_per_epoch() const override { return params_.steps_per_epoch; }
  double seconds_per_step() const override { return params_.seconds_per_step; }
  const Zdt1Params& params() const noexcept { return params_; }

  /// Noise-free ZDT1 objectives at `x`, negated.
  static std::vector<double> closed_form(const std::vector<double>& x) {
    const double f1 = x[0];
    double tail = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) tail += x[i];
    const double g = 1.0 + 9.0 * tail / static_cast<double>(x.size() - 1);
    const double f2 = g * (1.0 - std::sqrt(f1 / g));
    return {-f1, -f2};
  }

  double noise_std(std::uint64_t steps) const {
    return params_.sigma0 / std::sqrt(1.0 + static_cast<double>(steps));
  }

  struct State {
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::vector<double> x;
  };

  Checkpoint encode(const State& s) const {
    ByteWriter w;
    w.u8(kVersion);
    w.u64(s.seed);
    w.u64(s.steps);
    for (double v : s.x) w.f64(v);
    return std::move(w).finish();
  }

  State decode(const Checkpoint& c) const {
    ByteReader r(c);
    if (r.u8() != kVersion) throw ContractError("zdt1 checkpoint version mismatch");
    State s;
    s.seed = r.u64();
    s.steps = r.u64();
    s.x.resize(params_.dimensions);
    for (auto& v : s.x) v = r.f64();
    if (!r.done()) throw ContractError("trailing bytes in zdt1 checkpoint");
    return s;
  }

  Checkpoint init(Rng& rng) const override {
    return encode({rng(), 0, std::vector<double>(params_.dimensions, 0.0)});
  }

  Checkpoint train(const Checkpoint& ckpt, const HyperparamVector& h,
                   std::size_t n_steps) const override {
    State s = decode(ckpt);
    if (n_steps == 0) return ckpt;
    s.x = space_.decode(h);
    s.steps += n_steps;
    return encode(s);
  }

  std::vector<double> evaluate(const Checkpoint& ckpt) const override {
    const State s = decode(ckpt);
    std::vector<double> f = closed_form(s.x);
    const double sd = noise_std(s.steps);
    if (sd > 0.0) {
      const NoiseStream noise(s.seed);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += sd * noise.normal(s.steps, 16 + i);
    }
    return f;
  }

  std::uint64_t trained_steps(const Checkpoint& ckpt) const override {
    return decode(ckpt).steps;
  }

 private:
  Zdt1Params params_;
  SearchSpace space_;
};

}  // namespace mopbt::tasks
