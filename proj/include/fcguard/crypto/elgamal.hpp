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
#include <unordered_map>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/canonical.hpp"
#include "fcguard/crypto/params.hpp"
#include "fcguard/crypto/rng.hpp"

namespace fcguard::crypto {

// Order-Q subgroup of Z_P^* with P = 2Q + 1.
struct GroupParams {
  Int P;
  Int Q;
  Int g;
  bool operator==(const GroupParams&) const = default;
};

GroupParams generate_group(unsigned bits, Rng& rng);
// 2048-bit MODP group from RFC 3526, generator 2 (a quadratic residue there).
GroupParams rfc3526_group_2048();
GroupParams group_for_profile(const ParameterProfile& params, Rng& rng);
bool group_valid(const GroupParams& group);

struct ElGamalPublicKey {
  GroupParams group;
  Int h;
  bool operator==(const ElGamalPublicKey&) const = default;
};

struct ElGamalPrivateKey {
  GroupParams group;
  Int x;
};

struct ElGamalKeyPair {
  ElGamalPublicKey pub;
  ElGamalPrivateKey priv;
};

ElGamalKeyPair elgamal_keygen(const GroupParams& group, Rng& rng);
ElGamalKeyPair elgamal_key_from_secret(const GroupParams& group, const Int& x);

// Exponential ElGamal: (g^r, g^m h^r).
struct ElGamalCiphertext {
  Int c1;
  Int c2;
  bool operator==(const ElGamalCiphertext&) const = default;
};

ElGamalCiphertext elgamal_encrypt_with(const ElGamalPublicKey& pk, const Int& m, const Int& r);
ElGamalCiphertext elgamal_encrypt(const ElGamalPublicKey& pk, const Int& m, Rng& rng);

// Recovers g^m and solves the discrete log by baby-step/giant-step over
// [0, bound). The baby-step table is built once per decryptor.
class ElGamalDecryptor {
 public:
  explicit ElGamalDecryptor(ElGamalPrivateKey sk, const Int& bound = pow2(kElGamalPlaintextBits));

  // Throws Error(kDecryptionFailure) when the plaintext is outside the bound.
  Int decrypt(const ElGamalCiphertext& ct) const;
  const ElGamalPrivateKey& key() const { return sk_; }

 private:
  ElGamalPrivateKey sk_;
  Int bound_;
  std::uint64_t step_ = 0;
  Int giant_;  // g^-step
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;
};

Int elgamal_decrypt(const ElGamalPrivateKey& sk, const ElGamalCiphertext& ct);

void to_json(json& j, const GroupParams& g);
void from_json(const json& j, GroupParams& g);
void to_json(json& j, const ElGamalPublicKey& k);
void from_json(const json& j, ElGamalPublicKey& k);
void to_json(json& j, const ElGamalCiphertext& c);
void from_json(const json& j, ElGamalCiphertext& c);

}  // namespace fcguard::crypto
