// Copyright 2026 The fcguard Authors.
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
#include <limits>
#include <span>
#include <string_view>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/hash.hpp"

namespace fcguard::crypto {

// Deterministic SHA-256 counter-mode generator. Every protocol object takes
// an Rng& so simulations replay bit-for-bit from a seed. Satisfies
// UniformRandomBitGenerator, so the <random> distributions work on it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  explicit Rng(std::span<const std::uint8_t> seed_material);
  static Rng from_entropy();

  // Independent child stream; advances this generator's fork counter.
  Rng fork(std::string_view label);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  void fill(std::span<std::uint8_t> out);
  // Uniform in [0, 2^n).
  Int bits(unsigned n);
  // Uniform in [0, bound).
  Int below(const Int& bound);
  // Uniform in [lo, hi].
  Int between(const Int& lo, const Int& hi);
  // Uniform unit of Z_n^*.
  Int unit_mod(const Int& n);
  // Uniform in [0, bound) for small bounds.
  std::uint64_t below_u64(std::uint64_t bound);

 private:
  void refill();

  Digest key_{};
  std::uint64_t counter_ = 0;
  std::uint64_t forks_ = 0;
  Digest block_{};
  std::size_t used_ = sizeof(Digest);
};

}  // namespace fcguard::crypto
