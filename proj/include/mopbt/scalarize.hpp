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
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "mopbt/core/types.hpp"

namespace mopbt::scalarize {

/// Nonnegative scalarizing weights, one per objective.
struct WeightVector {
  std::vector<double> w;

  std::size_t size() const noexcept { return w.size(); }
  double operator[](std::size_t i) const { return w[i]; }
};

namespace detail {
inline void check(const ObjectiveVector& f, const WeightVector& w) {
  require(!f.empty(), "objective vector must be non-empty");
  require(f.size() == w.size(), "weight vector length differs from objectives");
}
}  // namespace detail

inline double weighted_sum(const ObjectiveVector& f, const WeightVector& w) {
  detail::check(f, w);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += w[i] * f[i];
  return sum;
}

/// min_i w_i f_i. This is the maximization form; no sign flip is applied.
inline double chebyshev(const ObjectiveVector& f, const WeightVector& w) {
  detail::check(f, w);
  double value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) value = std::min(value, w[i] * f[i]);
  return value;
}

inline constexpr double kDefaultParegoRho = 0.05;

/// Augmented Chebyshev: rho * weighted_sum + chebyshev.
inline double parego(const ObjectiveVector& f, const WeightVector& w,
                     double rho = kDefaultParegoRho) {
  return rho * weighted_sum(f, w) + chebyshev(f, w);
}

/// (min_i max(0, f_i / w_i))^K with K the number of objectives. Every
/// weight must be strictly positive.
inline double golovin(const ObjectiveVector& f, const WeightVector& w) {
  detail::check(f, w);
  double value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(w[i] > 0.0, "golovin scalarization needs strictly positive weights");
    value = std::min(value, std::max(0.0, f[i] / w[i]));
  }
  return std::pow(value, static_cast<double>(f.size()));
}

struct Scalarizer {
  enum class Kind { kWeightedSum, kChebyshev, kParego, kGolovin };

  Kind kind = Kind::kParego;
  double parego_rho = kDefaultParegoRho;

  double operator()(const ObjectiveVector& f, const WeightVector& w) const {
    switch (kind) {
      case Kind::kWeightedSum: return weighted_sum(f, w);
      case Kind::kChebyshev: return chebyshev(f, w);
      case Kind::kParego: return parego(f, w, parego_rho);
      case Kind::kGolovin: return golovin(f, w);
    }
    return 0.0;
  }
};

inline std::string_view to_string(Scalarizer::Kind kind) {
  switch (kind) {
    case Scalarizer::Kind::kWeightedSum: return "weighted-sum";
    case Scalarizer::Kind::kChebyshev: return "chebyshev";
    case Scalarizer::Kind::kParego: return "parego";
    case Scalarizer::Kind::kGolovin: return "golovin";
  }
  return "?";
}

inline Scalarizer::Kind scalarizer_from_string(std::string_view name) {
  if (name == "weighted-sum") return Scalarizer::Kind::kWeightedSum;
  if (name == "chebyshev") return Scalarizer::Kind::kChebyshev;
  if (name == "parego") return Scalarizer::Kind::kParego;
  if (name == "golovin") return Scalarizer::Kind::kGolovin;
  throw ContractError("unknown scalarizer: " + std::string(name));
}

/// Uniform sample from the positive orthant of the unit sphere: |N(0,1)| per
/// coordinate, then L2-normalized. The all-zero draw is rejected.
inline WeightVector sample_unit_weight(Rng& rng, std::size_t k) {
  require(k >= 1, "weight dimension must be at least 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  WeightVector out{std::vector<double>(k)};
  for (;;) {
    double norm2 = 0.0;
    for (auto& x : out.w) {
      x = std::abs(normal(rng));
      norm2 += x * x;
    }
    if (norm2 > 0.0) {
      const double norm = std::sqrt(norm2);
      for (auto& x : out.w) x /= norm;
      return out;
    }
  }
}

inline std::vector<WeightVector> sample_unit_weights(Rng& rng, std::size_t k,
                                                     std::size_t count) {
  std::vector<WeightVector> set;
  set.reserve(count);
  for (std::size_t i = 0; i < count; ++i) set.push_back(sample_unit_weight(rng, k));
  return set;
}

/// max over a fixed weight set of the scalarized value.
inline double max_scalarization(const ObjectiveVector& f,
                                 std::span<const WeightVector> weights,
                                 const Scalarizer& scalarizer) {
  require(!weights.empty(), "max scalarization needs at least one weight vector");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& w : weights) best = std::max(best, scalarizer(f, w));
  return best;
}

}  // namespace mopbt::scalarize
