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
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mopbt/core/types.hpp"

namespace mopbt {

enum class EventKind { kEval, kExploit, kError, kWarning };

inline std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kEval: return "eval";
    case EventKind::kExploit: return "exploit";
    case EventKind::kError: return "error";
    case EventKind::kWarning: return "warning";
  }
  return "?";
}

inline EventKind event_kind_from_string(std::string_view s) {
  if (s == "eval") return EventKind::kEval;
  if (s == "exploit") return EventKind::kExploit;
  if (s == "error") return EventKind::kError;
  if (s == "warning") return EventKind::kWarning;
  throw ContractError("unknown event kind: " + std::string(s));
}

/// One line of a run log.
///
/// `t` is the run's simulated clock in seconds, `step` the lineage's training
/// step count and `work` the cumulative number of training steps the whole
/// run had performed when the event was recorded. Optional fields are only
/// serialized when set.
struct Event {
  double t = 0.0;
  std::uint64_t step = 0;
  EventKind kind = EventKind::kEval;
  std::size_t sol = 0;
  std::vector<double> f;
  std::vector<std::size_t> hp;
  std::optional<std::size_t> donor;
  std::optional<double> violation;
  std::optional<std::size_t> rung;
  std::optional<bool> promoted;
  std::optional<std::size_t> rung_rank;
  std::optional<std::size_t> rung_size;
  std::uint64_t work = 0;
  std::string message;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["step"] = step;
    j["event"] = std::string(to_string(kind));
    j["sol"] = sol;
    j["f"] = f;
    j["hp"] = hp;
    if (donor) j["donor"] = *donor;
    if (violation) j["cv"] = *violation;
    if (rung) j["rung"] = *rung;
    if (promoted) j["promoted"] = *promoted;
    if (rung_rank) j["rung_rank"] = *rung_rank;
    if (rung_size) j["rung_size"] = *rung_size;
    j["work"] = work;
    if (!message.empty()) j["msg"] = message;
    return j;
  }

  static Event from_json(const nlohmann::json& j) {
    Event e;
    e.t = j.at("t").get<double>();
    e.step = j.at("step").get<std::uint64_t>();
    e.kind = event_kind_from_string(j.at("event").get<std::string>());
    e.sol = j.at("sol").get<std::size_t>();
    e.f = j.at("f").get<std::vector<double>>();
    e.hp = j.at("hp").get<std::vector<std::size_t>>();
    if (j.contains("donor")) e.donor = j["donor"].get<std::size_t>();
    if (j.contains("cv")) e.violation = j["cv"].get<double>();
    if (j.contains("rung")) e.rung = j["rung"].get<std::size_t>();
    if (j.contains("promoted")) e.promoted = j["promoted"].get<bool>();
    if (j.contains("rung_rank")) e.rung_rank = j["rung_rank"].get<std::size_t>();
    if (j.contains("rung_size")) e.rung_size = j["rung_size"].get<std::size_t>();
    if (j.contains("work")) e.work = j["work"].get<std::uint64_t>();
    if (j.contains("msg")) e.message = j["msg"].get<std::string>();
    return e;
  }

  friend bool operator==(const Event&, const Event&) = default;
};

/// Append-only event stream of one algorithm run.
class RunLog {
 public:
  void append(Event e) { events_.push_back(std::move(e)); }

  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

  std::size_t count(EventKind kind) const {
    std::size_t n = 0;
    for (const auto& e : events_) n += e.kind == kind ? 1 : 0;
    return n;
  }

  std::vector<const Event*> evaluations() const {
    std::vector<const Event*> out;
    for (const auto& e : events_) {
      if (e.kind == EventKind::kEval) out.push_back(&e);
    }
    return out;
  }

  void write_jsonl(std::ostream& out) const {
    for (const auto& e : events_) out << e.to_json().dump() << '\n';
  }

  std::string to_jsonl() const {
    std::ostringstream out;
    write_jsonl(out);
    return out.str();
  }

  static RunLog read_jsonl(std::istream& in) {
    RunLog log;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      log.append(Event::from_json(nlohmann::json::parse(line)));
    }
    return log;
  }

  friend bool operator==(const RunLog&, const RunLog&) = default;

 private:
  std::vector<Event> events_;
};

/// Mutex-guarded run log for concurrent writers.
class SharedRunLog {
 public:
  void append(Event e) {
    std::lock_guard lock(mutex_);
    log_.append(std::move(e));
  }

  RunLog take() {
    std::lock_guard lock(mutex_);
    return std::move(log_);
  }

 private:
  std::mutex mutex_;
  RunLog log_;
};

}  // namespace mopbt
