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

#include "fcguard/crypto/elgamal.hpp"

#include <openssl/bn.h>

#include <memory>

#include "fcguard/crypto/primes.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {

namespace {

std::uint64_t low_word(const Int& x) {
  return static_cast<std::uint64_t>(mpz_getlimbn(x.get_mpz_t(), 0));
}

Int isqrt_ceil(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) r += 1;
  return r;
}

}  // namespace

GroupParams generate_group(unsigned bits, Rng& rng) {
  GroupParams group;
  group.Q = random_safe_prime_cofactor(bits - 1, rng);
  group.P = 2 * group.Q + 1;
  do {
    Int x = rng.between(2, group.P - 2);
    group.g = x * x % group.P;
  } while (group.g == 1);
  return group;
}

GroupParams rfc3526_group_2048() {
  std::unique_ptr<BIGNUM, decltype(&BN_free)> bn(BN_get_rfc3526_prime_2048(nullptr), &BN_free);
  enforce(bn != nullptr, ErrorCode::kBackend, "BN_get_rfc3526_prime_2048 failed");
  std::unique_ptr<char, void (*)(char*)> hex(BN_bn2hex(bn.get()),
                                              [](char* p) { OPENSSL_free(p); });
  GroupParams group;
  group.P = Int(hex.get(), 16);
  group.Q = (group.P - 1) / 2;
  group.g = 2;
  return group;
}

GroupParams group_for_profile(const ParameterProfile& params, Rng& rng) {
  if (params.id == Profile::kPaper) return rfc3526_group_2048();
  return generate_group(params.group_bits, rng);
}

bool group_valid(const GroupParams& group) {
  if (group.P != 2 * group.Q + 1) return false;
  if (!is_probable_prime(group.Q) || !is_probable_prime(group.P)) return false;
  if (group.g <= 1 || group.g >= group.P) return false;
  return powm(group.g, group.Q, group.P) == 1;
}

ElGamalKeyPair elgamal_keygen(const GroupParams& group, Rng& rng) {
  return elgamal_key_from_secret(group, rng.between(1, group.Q - 1));
}

ElGamalKeyPair elgamal_key_from_secret(const GroupParams& group, const Int& x) {
  enforce(x >= 1 && x < group.Q, ErrorCode::kInvalidArgument,
          "ElGamal secret must lie in [1, Q)");
  return ElGamalKeyPair{{group, powm(group.g, x, group.P)}, {group, x}};
}

ElGamalCiphertext elgamal_encrypt_with(const ElGamalPublicKey& pk, const Int& m, const Int& r) {
  enforce(m >= 0 && m < pow2(kElGamalPlaintextBits), ErrorCode::kOutOfRange,
          "ElGamal plaintext outside [0, 2^30)");
  const auto& G = pk.group;
  return ElGamalCiphertext{powm(G.g, r, G.P), powm(G.g, m, G.P) * powm(pk.h, r, G.P) % G.P};
}

ElGamalCiphertext elgamal_encrypt(const ElGamalPublicKey& pk, const Int& m, Rng& rng) {
  return elgamal_encrypt_with(pk, m, rng.below(pk.group.Q));
}

ElGamalDecryptor::ElGamalDecryptor(ElGamalPrivateKey sk, const Int& bound) : sk_(std::move(sk)) {
  const auto& G = sk_.group;
  bound_ = bound < G.Q ? bound : G.Q;
  Int step = isqrt_ceil(bound_);
  step_ = step.get_ui();
  baby_.reserve(step_);
  Int acc = 1;
  for (std::uint64_t j = 0; j < step_; ++j) {
    baby_.emplace(low_word(acc), j);
    acc = acc * G.g % G.P;
  }
  giant_ = inverse(acc, G.P);
}

Int ElGamalDecryptor::decrypt(const ElGamalCiphertext& ct) const {
  const auto& G = sk_.group;
  enforce(ct.c1 > 0 && ct.c1 < G.P && ct.c2 > 0 && ct.c2 < G.P, ErrorCode::kDecryptionFailure,
          "ElGamal ciphertext component out of range");
  Int target = ct.c2 * inverse(powm(ct.c1, sk_.x, G.P), G.P) % G.P;
  for (std::uint64_t i = 0; i <= step_; ++i) {
    auto it = baby_.find(low_word(target));
    if (it != baby_.end()) {
      Int m = Int(static_cast<unsigned long>(i)) * Int(static_cast<unsigned long>(step_)) +
              Int(static_cast<unsigned long>(it->second));
      if (m < bound_ && powm(G.g, m, G.P) == ct.c2 * inverse(powm(ct.c1, sk_.x, G.P), G.P) % G.P) {
        return m;
      }
    }
    target = target * giant_ % G.P;
  }
  fail(ErrorCode::kDecryptionFailure, "ElGamal plaintext outside the discrete-log bound");
}

Int elgamal_decrypt(const ElGamalPrivateKey& sk, const ElGamalCiphertext& ct) {
  return ElGamalDecryptor(sk).decrypt(ct);
}

void to_json(json& j, const GroupParams& g) { j = json{{"P", g.P}, {"Q", g.Q}, {"g", g.g}}; }

void from_json(const json& j, GroupParams& g) {
  g.P = j.at("P").get<Int>();
  g.Q = j.at("Q").get<Int>();
  g.g = j.at("g").get<Int>();
}

void to_json(json& j, const ElGamalPublicKey& k) { j = json{{"group", k.group}, {"h", k.h}}; }

void from_json(const json& j, ElGamalPublicKey& k) {
  k.group = j.at("group").get<GroupParams>();
  k.h = j.at("h").get<Int>();
}

void to_json(json& j, const ElGamalCiphertext& c) { j = json{{"c1", c.c1}, {"c2", c.c2}}; }

void from_json(const json& j, ElGamalCiphertext& c) {
  c.c1 = j.at("c1").get<Int>();
  c.c2 = j.at("c2").get<Int>();
}

}  // namespace fcguard::crypto
