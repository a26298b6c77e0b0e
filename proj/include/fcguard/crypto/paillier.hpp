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

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/canonical.hpp"
#include "fcguard/crypto/rng.hpp"

namespace fcguard::crypto {

struct PaillierPublicKey {
  Int N;
  Int N2;
  Int g() const { return N + 1; }
  bool operator==(const PaillierPublicKey&) const = default;
};

struct PaillierPrivateKey {
  Int p;
  Int q;
  Int lambda;  // lcm(p-1, q-1)
  Int mu;      // L(g^lambda mod N^2)^-1 mod N
};

struct PaillierKeyPair {
  PaillierPublicKey pub;
  PaillierPrivateKey priv;
};

PaillierKeyPair paillier_keygen(unsigned modulus_bits, Rng& rng);
PaillierKeyPair paillier_key_from_primes(const Int& p, const Int& q);

struct PaillierCiphertext {
  Int c;
  bool operator==(const PaillierCiphertext&) const = default;
};

// Throws Error(kOutOfRange) unless 0 <= m < N; r must be a unit mod N.
PaillierCiphertext paillier_encrypt_with(const PaillierPublicKey& pk, const Int& m, const Int& r);
PaillierCiphertext paillier_encrypt(const PaillierPublicKey& pk, const Int& m, Rng& rng);
Int paillier_decrypt(const PaillierKeyPair& keys, const PaillierCiphertext& ct);

void to_json(json& j, const PaillierPublicKey& k);
void from_json(const json& j, PaillierPublicKey& k);
void to_json(json& j, const PaillierCiphertext& c);
void from_json(const json& j, PaillierCiphertext& c);

}  // namespace fcguard::crypto
