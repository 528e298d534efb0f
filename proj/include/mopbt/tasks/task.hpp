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
#include <string>
#include <vector>

#include "mopbt/core/types.hpp"
#include "mopbt/search_space.hpp"
#include "mopbt/tasks/checkpoint.hpp"

namespace mopbt::tasks {

/// A trainable workload with K objectives over a discrete search space.
///
/// Implementations are immutable after construction and safe to share across
/// threads. `train` returns a new checkpoint and never touches its input;
/// `evaluate` is a pure function of the checkpoint. Objectives are maximized.
/// The raw values returned by `evaluate` may be non-finite; callers decide how
/// to treat that.
class TrainableTask {
 public:
  virtual ~TrainableTask() = default;

  virtual std::string name() const = 0;
  virtual std::size_t num_objectives() const = 0;
  virtual std::vector<std::string> objective_names() const = 0;
  virtual const SearchSpace& search_space() const = 0;
  virtual std::size_t steps_per_epoch() const = 0;

  /// Simulated cost of one training step, used by the run clock.
  virtual double seconds_per_step() const = 0;

  virtual Checkpoint init(Rng& rng) const = 0;
  virtual Checkpoint train(const Checkpoint& ckpt, const HyperparamVector& h,
                           std::size_t n_steps) const = 0;
  virtual std::vector<double> evaluate(const Checkpoint& ckpt) const = 0;

  /// Number of training steps already stored in `ckpt`.
  virtual std::uint64_t trained_steps(const Checkpoint& ckpt) const = 0;

  virtual bool has_constraint() const { return false; }

  virtual ConstraintStatus constraint(const ObjectiveVector&) const {
    return ConstraintStatus::satisfied();
  }
};

}  // namespace mopbt::tasks
