// Copyright 2025-2026 The evoqk developers.
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

#include <cstdint>
#include <random>
#include <string_view>

namespace evoqk {

// Deterministic random stream. The engine (mt19937_64) is fully specified
// by the standard, and all distributions are hand-rolled on top of raw
// 64-bit draws, so identical seeds give identical sequences on every
// platform. std::uniform_*_distribution must not be used here: their
// output is implementation-defined.
class RngStream {
 public:
  static constexpr std::string_view algorithm = "mt19937_64";

  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  // Derives an independent stream from (seed, label). Distinct labels give
  // unrelated streams; the mapping is a fixed FNV-1a hash so it never
  // changes across builds. seed() still reports the master seed, which is
  // what logs should record.
  static RngStream labeled(std::uint64_t seed, std::string_view label);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draw_count() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); bound must be positive. Rejection
  // sampling keeps the result exactly uniform.
  int next_int(int bound);

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
};

}  // namespace evoqk
