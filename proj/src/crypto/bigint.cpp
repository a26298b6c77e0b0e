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

#include "fcguard/crypto/bigint.hpp"

#include "fcguard/error.hpp"

namespace fcguard::crypto {

OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

Int powm(const Int& base, const Int& exp, const Int& modulus) {
  enforce(modulus > 0, ErrorCode::kInvalidArgument, "powm: non-positive modulus");
  ++op_counters().modexp;
  Int result;
  if (exp < 0) {
    Int inv = inverse(base, modulus);
    Int pos = -exp;
    mpz_powm(result.get_mpz_t(), inv.get_mpz_t(), pos.get_mpz_t(), modulus.get_mpz_t());
  } else {
    mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  }
  return result;
}

Int inverse(const Int& a, const Int& modulus) {
  ++op_counters().modinv;
  Int result;
  if (mpz_invert(result.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    fail(ErrorCode::kInvalidArgument, "inverse: element not invertible");
  }
  return result;
}

Int mod(const Int& a, const Int& modulus) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int pow2(unsigned bits) {
  Int r;
  mpz_setbit(r.get_mpz_t(), bits);
  return r;
}

std::size_t bit_length(const Int& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

bool coprime(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g == 1;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::vector<std::uint8_t> magnitude_bytes(const Int& x) {
  if (x == 0) return {};
  std::size_t count = (mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8;
  std::vector<std::uint8_t> out(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, x.get_mpz_t());
  out.resize(written);
  return out;
}

Int from_magnitude_bytes(std::span<const std::uint8_t> bytes) {
  Int r;
  if (!bytes.empty()) mpz_import(r.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return r;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}
}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  enforce(hex.size() % 2 == 0, ErrorCode::kParseError, "hex: odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    enforce(hi >= 0 && lo >= 0, ErrorCode::kParseError, "hex: invalid digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

}  // namespace fcguard::crypto
