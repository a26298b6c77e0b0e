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

#include <string_view>

namespace fcguard::crypto {

enum class Profile { kToy, kPaper };

// Bit lengths for every primitive. `toy` keeps tests at desk scale; `paper`
// is the benchmarked configuration (1536-bit safe-prime cofactors for the
// CL modulus, 2048-bit encryption groups, 256-bit challenges).
struct ParameterProfile {
  Profile id;
  unsigned cl_prime_bits;   // |p'| = |q'|
  unsigned challenge_bits;  // Fiat-Shamir challenge length
  unsigned stat_bits;       // statistical zero-knowledge slack
  unsigned attribute_bits;  // attributes and link secrets live below 2^attribute_bits
  unsigned e_bits;          // CL exponent e sits in [2^(e_bits-1), 2^(e_bits-1) + 2^(e_range_bits-1)]
  unsigned e_range_bits;
  unsigned group_bits;      // ElGamal/commitment group and Paillier modulus

  unsigned modulus_bits() const { return 2 * (cl_prime_bits + 1); }
  unsigned v_bits() const { return modulus_bits() + e_bits + 2 * stat_bits; }
  // Bound on |response| for a witness of `witness_bits`.
  unsigned response_bits(unsigned witness_bits) const {
    return witness_bits + stat_bits + challenge_bits + 1;
  }
  std::string_view name() const { return id == Profile::kToy ? "toy" : "paper"; }
};

const ParameterProfile& profile(Profile id);
// Accepts "toy" or "paper"; throws Error(kInvalidArgument) otherwise.
Profile parse_profile(std::string_view name);

// Strings hash into this many bits; integers at or above 2^bits are rejected.
inline constexpr unsigned kAttributeEncodingBits = 252;
// Exponential-ElGamal plaintexts must be below 2^30 (9-digit SSNs fit).
inline constexpr unsigned kElGamalPlaintextBits = 30;

}  // namespace fcguard::crypto
