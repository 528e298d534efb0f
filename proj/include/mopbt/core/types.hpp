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
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mopbt {

/// Raised when a caller breaks an operation's precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for inputs outside the supported envelope (e.g. K > 3 hypervolume).
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Rng = std::mt19937_64;

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractError(message);
}

/// A point in objective space. Every objective is maximized.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;

  ObjectiveVector(std::initializer_list<double> values)
      : values_(values) {
    validate();
  }

  explicit ObjectiveVector(std::vector<double> values)
      : values_(std::move(values)) {
    validate();
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t i) const { return values_[i]; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }

  friend bool operator==(const ObjectiveVector&,
                         const ObjectiveVector&) = default;

 private:
  void validate() const {
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw ContractError("objective vector entries must be finite");
      }
    }
  }

  std::vector<double> values_;
};

inline bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

/// Feasibility of a solution under an optional constraint. Feasible iff the
/// violation is exactly zero.
struct ConstraintStatus {
  bool feasible = true;
  double violation = 0.0;

  static ConstraintStatus satisfied() { return {}; }

  static ConstraintStatus violated(double amount) {
    require(amount > 0.0 && !std::isnan(amount),
            "constraint violation must be positive");
    return {false, amount};
  }

  static ConstraintStatus from_violation(double amount) {
    require(amount >= 0.0 && !std::isnan(amount),
            "constraint violation must be nonnegative");
    return amount == 0.0 ? satisfied() : ConstraintStatus{false, amount};
  }

  friend bool operator==(const ConstraintStatus&,
                         const ConstraintStatus&) = default;
};

}  // namespace mopbt
