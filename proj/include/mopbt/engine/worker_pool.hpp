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

#include <condition_variable>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace mopbt::engine {

/// Fixed-size thread pool. A pool of size <= 1 runs everything inline on the
/// calling thread.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers) {
    if (workers <= 1) return;
    threads_.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) {
      threads_.emplace_back([this] { loop(); });
    }
  }

  ~WorkerPool() {
    {
      std::lock_guard lock(mutex_);
      stopping_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const noexcept { return threads_.empty() ? 1 : threads_.size(); }

  /// Queues `job`. Jobs may submit further jobs.
  void submit(std::function<void()> job) {
    if (threads_.empty()) {
      std::unique_lock lock(mutex_);
      queue_.push_back(std::move(job));
      if (inline_draining_) return;
      inline_draining_ = true;
      while (!queue_.empty()) {
        auto next = std::move(queue_.front());
        queue_.pop_front();
        lock.unlock();
        run(next);
        lock.lock();
      }
      inline_draining_ = false;
      return;
    }
    {
      std::lock_guard lock(mutex_);
      queue_.push_back(std::move(job));
    }
    wake_.notify_one();
  }

  /// Blocks until every queued and running job finished, then rethrows the
  /// first exception any job raised.
  void wait_idle() {
    std::unique_lock lock(mutex_);
    idle_.wait(lock, [this] { return queue_.empty() && active_ == 0; });
    if (error_) {
      auto e = std::exchange(error_, nullptr);
      std::rethrow_exception(e);
    }
  }

  /// Runs fn(i) for i in [0, n) and waits for all of them.
  template <typename Fn>
  void parallel_for(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) {
      submit([&fn, i] { fn(i); });
    }
    wait_idle();
  }

 private:
  void run(std::function<void()>& job) {
    try {
      job();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }

  void loop() {
    for (;;) {
      std::function<void()> job;
      {
        std::unique_lock lock(mutex_);
        wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
        if (queue_.empty()) return;
        job = std::move(queue_.front());
        queue_.pop_front();
        ++active_;
      }
      run(job);
      {
        std::lock_guard lock(mutex_);
        --active_;
        if (queue_.empty() && active_ == 0) idle_.notify_all();
      }
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable idle_;
  std::deque<std::function<void()>> queue_;
  std::size_t active_ = 0;
  bool stopping_ = false;
  bool inline_draining_ = false;
  std::exception_ptr error_;
};

/// Default worker count: $MOPBT_WORKERS when set and positive, else 1.
inline std::size_t default_workers() {
  if (const char* env = std::getenv("MOPBT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

}  // namespace mopbt::engine
