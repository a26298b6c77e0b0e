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

#include <cstddef>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/rng.hpp"

namespace fcguard::crypto {

bool is_probable_prime(const Int& n, int reps = 40);

// Random prime with exactly `bits` bits.
Int random_prime(unsigned bits, Rng& rng);

// Random prime in [lo, lo + width).
Int random_prime_in(const Int& lo, const Int& width, Rng& rng);

// Random `bits`-bit prime p' such that 2p' + 1 is also prime. Throws
// Error(kPrimeGenerationTimeout) after `max_windows` sieve windows.
Int random_safe_prime_cofactor(unsigned bits, Rng& rng, std::size_t max_windows = 1u << 16);

}  // namespace fcguard::crypto
