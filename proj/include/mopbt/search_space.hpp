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
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mopbt/core/types.hpp"

namespace mopbt {

/// One discrete ordinal hyperparameter domain. Index order is value order.
struct Domain {
  enum class Scale { kLinear, kLog };

  std::string name;
  std::vector<double> values;
  Scale scale = Scale::kLinear;

  std::size_t size() const noexcept { return values.size(); }

  static Domain linear(std::string name, double lo, double hi, std::size_t count) {
    require(count >= 2, "a domain needs at least two values");
    Domain d{std::move(name), {}, Scale::kLinear};
    for (std::size_t i = 0; i < count; ++i) {
      d.values.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(count - 1));
    }
    return d;
  }

  static Domain log_spaced(std::string name, double lo, double hi,
                           std::size_t count) {
    require(count >= 2, "a domain needs at least two values");
    require(lo > 0.0 && hi > lo, "log domain needs 0 < lo < hi");
    Domain d{std::move(name), {}, Scale::kLog};
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
      d.values.push_back(std::pow(
          10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
    }
    return d;
  }
};

/// Ordinal indices into each domain of a search space.
struct HyperparamVector {
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  std::size_t operator[](std::size_t j) const { return indices[j]; }
  std::size_t& operator[](std::size_t j) { return indices[j]; }

  friend bool operator==(const HyperparamVector&,
                         const HyperparamVector&) = default;
};

class SearchSpace {
 public:
  SearchSpace() = default;

  explicit SearchSpace(std::vector<Domain> domains) : domains_(std::move(domains)) {
    for (const auto& d : domains_) {
      require(d.size() >= 2, "a domain needs at least two values");
      for (std::size_t i = 1; i < d.size(); ++i) {
        require(d.values[i - 1] < d.values[i], "domain values must be increasing");
      }
    }
  }

  std::size_t size() const noexcept { return domains_.size(); }
  const Domain& operator[](std::size_t j) const { return domains_[j]; }
  const std::vector<Domain>& domains() const noexcept { return domains_; }

  bool contains(const HyperparamVector& h) const {
    if (h.size() != domains_.size()) return false;
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (h[j] >= domains_[j].size()) return false;
    }
    return true;
  }

  std::vector<double> decode(const HyperparamVector& h) const {
    require(contains(h), "hyperparameter vector outside the search space");
    std::vector<double> out(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) out[j] = domains_[j].values[h[j]];
    return out;
  }

  /// Independent uniform draw per coordinate.
  HyperparamVector sample_uniform(Rng& rng) const {
    HyperparamVector h{std::vector<std::size_t>(domains_.size())};
    for (std::size_t j = 0; j < domains_.size(); ++j) {
      std::uniform_int_distribution<std::size_t> pick(0, domains_[j].size() - 1);
      h[j] = pick(rng);
    }
    return h;
  }

 private:
  std::vector<Domain> domains_;
};

}  // namespace mopbt
