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

#include "fcguard/crypto/paillier.hpp"

#include "fcguard/crypto/primes.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {

PaillierKeyPair paillier_keygen(unsigned modulus_bits, Rng& rng) {
  enforce(modulus_bits >= 16 && modulus_bits % 2 == 0, ErrorCode::kInvalidArgument,
          "Paillier modulus bits must be even and at least 16");
  for (;;) {
    Int p = random_prime(modulus_bits / 2, rng);
    Int q = random_prime(modulus_bits / 2, rng);
    if (p == q) continue;
    Int n = p * q;
    if (bit_length(n) != modulus_bits || !coprime(n, (p - 1) * (q - 1))) continue;
    return paillier_key_from_primes(p, q);
  }
}

PaillierKeyPair paillier_key_from_primes(const Int& p, const Int& q) {
  enforce(p != q && is_probable_prime(p) && is_probable_prime(q), ErrorCode::kInvalidArgument,
          "Paillier factors must be distinct primes");
  PaillierKeyPair keys;
  keys.pub.N = p * q;
  keys.pub.N2 = keys.pub.N * keys.pub.N;
  keys.priv.p = p;
  keys.priv.q = q;
  keys.priv.lambda = lcm(p - 1, q - 1);
  Int u = powm(keys.pub.g(), keys.priv.lambda, keys.pub.N2);
  keys.priv.mu = inverse((u - 1) / keys.pub.N, keys.pub.N);
  return keys;
}

PaillierCiphertext paillier_encrypt_with(const PaillierPublicKey& pk, const Int& m, const Int& r) {
  enforce(m >= 0 && m < pk.N, ErrorCode::kOutOfRange, "Paillier plaintext outside [0, N)");
  enforce(r > 0 && r < pk.N && coprime(r, pk.N), ErrorCode::kInvalidArgument,
          "Paillier randomness must be a unit mod N");
  // (1 + N)^m == 1 + mN (mod N^2)
  Int gm = (1 + m * pk.N) % pk.N2;
  return PaillierCiphertext{gm * powm(r, pk.N, pk.N2) % pk.N2};
}

PaillierCiphertext paillier_encrypt(const PaillierPublicKey& pk, const Int& m, Rng& rng) {
  return paillier_encrypt_with(pk, m, rng.unit_mod(pk.N));
}

Int paillier_decrypt(const PaillierKeyPair& keys, const PaillierCiphertext& ct) {
  const auto& pk = keys.pub;
  enforce(ct.c > 0 && ct.c < pk.N2 && coprime(ct.c, pk.N), ErrorCode::kDecryptionFailure,
          "Paillier ciphertext outside Z_{N^2}^*");
  Int u = powm(ct.c, keys.priv.lambda, pk.N2);
  return (u - 1) / pk.N * keys.priv.mu % pk.N;
}

void to_json(json& j, const PaillierPublicKey& k) { j = json{{"N", k.N}}; }

void from_json(const json& j, PaillierPublicKey& k) {
  k.N = j.at("N").get<Int>();
  k.N2 = k.N * k.N;
}

void to_json(json& j, const PaillierCiphertext& c) { j = json{{"c", c.c}}; }

void from_json(const json& j, PaillierCiphertext& c) { c.c = j.at("c").get<Int>(); }

}  // namespace fcguard::crypto
