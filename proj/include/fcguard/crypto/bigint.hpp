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

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fcguard::crypto {

using Int = mpz_class;

// Per-thread tallies of the expensive group operations. The benchmark
// harness snapshots these around each protocol phase.
struct OpCounters {
  std::uint64_t modexp = 0;
  std::uint64_t modinv = 0;
};

OpCounters& op_counters();

// base^exp mod modulus. Negative exponents go through the modular inverse.
Int powm(const Int& base, const Int& exp, const Int& modulus);
Int inverse(const Int& a, const Int& modulus);
// Least non-negative residue.
Int mod(const Int& a, const Int& modulus);
Int pow2(unsigned bits);
std::size_t bit_length(const Int& x);
bool coprime(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Big-endian magnitude, no leading zero bytes (zero is empty).
std::vector<std::uint8_t> magnitude_bytes(const Int& x);
Int from_magnitude_bytes(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace fcguard::crypto
