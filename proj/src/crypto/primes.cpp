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

#include "fcguard/crypto/primes.hpp"

#include <vector>

#include "fcguard/error.hpp"

namespace fcguard::crypto {

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kLimit = 1u << 16;
    std::vector<bool> composite(kLimit, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 3; i < kLimit; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j < kLimit; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool fermat_base2(const Int& n) {
  Int r;
  Int e = n - 1;
  Int two = 2;
  mpz_powm(r.get_mpz_t(), two.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
  return r == 1;
}

// Modular inverse of 2 modulo an odd prime r.
unsigned long half_mod(unsigned long r) { return (r + 1) / 2; }

}  // namespace

bool is_probable_prime(const Int& n, int reps) {
  return mpz_probab_prime_p(n.get_mpz_t(), reps) > 0;
}

Int random_prime(unsigned bits, Rng& rng) {
  enforce(bits >= 2, ErrorCode::kInvalidArgument, "random_prime: need at least 2 bits");
  for (;;) {
    Int start = rng.bits(bits) | pow2(bits - 1);
    Int p;
    mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
    if (bit_length(p) == bits) return p;
  }
}

Int random_prime_in(const Int& lo, const Int& width, Rng& rng) {
  enforce(width > 0, ErrorCode::kInvalidArgument, "random_prime_in: empty range");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Int start = lo + rng.below(width);
    Int p;
    mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
    if (p < lo + width) return p;
  }
  fail(ErrorCode::kPrimeGenerationTimeout, "random_prime_in: no prime found in range");
}

Int random_safe_prime_cofactor(unsigned bits, Rng& rng, std::size_t max_windows) {
  enforce(bits >= 3, ErrorCode::kInvalidArgument, "safe prime cofactor needs at least 3 bits");
  if (bits < 24) {
    for (std::size_t attempt = 0; attempt < max_windows * 64; ++attempt) {
      Int candidate = rng.bits(bits) | pow2(bits - 1) | 1;
      if (is_probable_prime(candidate) && is_probable_prime(2 * candidate + 1)) return candidate;
    }
    fail(ErrorCode::kPrimeGenerationTimeout, "safe prime search exhausted");
  }

  constexpr std::size_t kWindow = 1u << 12;
  const auto& primes = small_primes();
  std::vector<bool> sieve(kWindow);
  // Top two bits set: the product of two such safe primes has full length.
  const Int top = pow2(bits - 1) | pow2(bits - 2);
  const Int span = pow2(bits - 2) - 2 * Int(static_cast<unsigned long>(kWindow)) - 2;

  for (std::size_t window = 0; window < max_windows; ++window) {
    Int base = top + rng.below(span);
    base |= 1;
    std::fill(sieve.begin(), sieve.end(), true);
    for (unsigned long r : primes) {
      unsigned long x = mpz_fdiv_ui(base.get_mpz_t(), r);
      unsigned long inv2 = half_mod(r);
      // base + 2k == 0 (mod r)
      unsigned long k1 = ((r - x) % r) * inv2 % r;
      // 2(base + 2k) + 1 == 0 (mod r)  <=>  base + 2k == -1/2 (mod r)
      unsigned long target = (r - inv2) % r;
      unsigned long k2 = ((target + r - x) % r) * inv2 % r;
      for (unsigned long k = k1; k < kWindow; k += r) sieve[k] = false;
      for (unsigned long k = k2; k < kWindow; k += r) sieve[k] = false;
    }
    for (std::size_t k = 0; k < kWindow; ++k) {
      if (!sieve[k]) continue;
      Int q = base + 2 * Int(static_cast<unsigned long>(k));
      if (!fermat_base2(q)) continue;
      Int p = 2 * q + 1;
      if (!fermat_base2(p)) continue;
      if (is_probable_prime(q, 30) && is_probable_prime(p, 30)) return q;
    }
  }
  fail(ErrorCode::kPrimeGenerationTimeout, "safe prime search exhausted");
}

}  // namespace fcguard::crypto
