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

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mopbt/core/types.hpp"

namespace mopbt::tasks {

/// Opaque, task-owned serialized training state.
struct Checkpoint {
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Little-endian writer for checkpoint payloads.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.bytes.push_back(v); }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  Checkpoint finish() && { return std::move(out_); }

 private:
  Checkpoint out_;
};

class ByteReader {
 public:
  explicit ByteReader(const Checkpoint& c) : data_(c.bytes) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  bool done() const noexcept { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw ContractError("truncated checkpoint");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

inline void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out.write(reinterpret_cast<const char*>(c.bytes.data()),
            static_cast<std::streamsize>(c.bytes.size()));
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  Checkpoint c;
  c.bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return c;
}

/// Counter-based noise: every (seed, counter, lane) triple maps to a fixed
/// draw, so a checkpoint only has to carry its seed and step count.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  double uniform(std::uint64_t counter, std::uint64_t lane) const {
    const std::uint64_t bits = mix(seed_ ^ mix(counter * 0x9E3779B97F4A7C15ULL + lane));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
  }

  /// Standard normal draw (Box-Muller).
  double normal(std::uint64_t counter, std::uint64_t lane) const {
    const double u1 = uniform(counter, 2 * lane);
    const double u2 = uniform(counter, 2 * lane + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace mopbt::tasks
