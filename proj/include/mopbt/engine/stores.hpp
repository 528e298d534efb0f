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
#include <filesystem>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "mopbt/engine/operators.hpp"
#include "mopbt/tasks/checkpoint.hpp"

namespace mopbt::engine {

/// Population state shared between workers. Readers get a consistent copy;
/// each update replaces one solution atomically.
class PopulationStore {
 public:
  explicit PopulationStore(std::vector<Solution> population)
      : population_(std::move(population)) {}

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return population_.size();
  }

  Solution get(std::size_t id) const {
    std::shared_lock lock(mutex_);
    return population_.at(id);
  }

  std::vector<Solution> snapshot() const {
    std::shared_lock lock(mutex_);
    return population_;
  }

  template <typename Fn>
  void update(std::size_t id, Fn&& fn) {
    std::unique_lock lock(mutex_);
    fn(population_.at(id));
  }

 private:
  mutable std::shared_mutex mutex_;
  std::vector<Solution> population_;
};

/// Keyed checkpoint storage with shared reads and exclusive writes, flushed
/// as <dir>/<key>.bin.
class CheckpointStore {
 public:
  void put(std::size_t key, tasks::Checkpoint c) {
    std::unique_lock lock(mutex_);
    items_[key] = std::move(c);
  }

  tasks::Checkpoint get(std::size_t key) const {
    std::shared_lock lock(mutex_);
    return items_.at(key);
  }

  bool contains(std::size_t key) const {
    std::shared_lock lock(mutex_);
    return items_.contains(key);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return items_.size();
  }

  void flush(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::shared_lock lock(mutex_);
    for (const auto& [key, c] : items_) {
      tasks::save_checkpoint(c, dir / (std::to_string(key) + ".bin"));
    }
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::size_t, tasks::Checkpoint> items_;
};

}  // namespace mopbt::engine
