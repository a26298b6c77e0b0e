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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/canonical.hpp"
#include "fcguard/crypto/params.hpp"
#include "fcguard/crypto/rng.hpp"

namespace fcguard::crypto {

// Camenisch-Lysyanskaya signatures over the quadratic residues of a
// safe-prime RSA modulus n = (2p'+1)(2q'+1).
struct ClPublicKey {
  Int n;
  Int S;
  Int Z;
  std::vector<Int> R;  // one base per attribute slot

  std::size_t slot_count() const { return R.size(); }
  bool operator==(const ClPublicKey&) const = default;
};

struct ClPrivateKey {
  Int p;
  Int q;
  Int p_prime;
  Int q_prime;
  Int x_Z;
  std::vector<Int> x_R;

  // Order of QR_n.
  Int group_order() const { return p_prime * q_prime; }
};

struct ClIssuerKeyPair {
  Profile profile = Profile::kToy;
  ClPublicKey pub;
  ClPrivateKey priv;
};

ClIssuerKeyPair cl_keygen(std::size_t attribute_count, const ParameterProfile& params, Rng& rng,
                          std::size_t max_prime_windows = 1u << 16);

// Assemble a key from chosen cofactors, base and exponents. Validates every
// key invariant and throws Error(kInvalidArgument) when one fails.
ClIssuerKeyPair cl_key_from_parts(const Int& p_prime, const Int& q_prime, const Int& S,
                                  const Int& x_Z, std::vector<Int> x_R,
                                  Profile profile = Profile::kToy);

// Recomputes primality of p, q, p', q', n = pq, S in QR_n, Z = S^x_Z,
// R_i = S^x_Ri and the exponent ranges.
bool cl_key_invariants_hold(const ClIssuerKeyPair& keys);

struct ClSignature {
  Int A;
  Int e;
  Int v;
  bool operator==(const ClSignature&) const = default;
};

// Signs slot values; a slot left empty is covered by `hidden_commitment`
// (U = R_0^m_0 * S^v' from the holder), in which case the returned v is only
// the issuer's share v'' and the holder adds v'. Throws Error(kOutOfRange)
// if more slots are given than the key has.
ClSignature cl_sign(const ClIssuerKeyPair& keys, std::span<const std::optional<Int>> slots,
                    const std::optional<Int>& hidden_commitment, const ParameterProfile& params,
                    Rng& rng);

// Same, with caller-chosen e and v. e must be invertible modulo p'q'.
ClSignature cl_sign_with(const ClIssuerKeyPair& keys, std::span<const std::optional<Int>> slots,
                         const std::optional<Int>& hidden_commitment, const Int& e, const Int& v);

// A^e * S^v * prod R_i^m_i == Z (mod n). Missing trailing slots count as 0.
bool cl_verify(const ClPublicKey& pub, std::span<const Int> slots, const ClSignature& sig);

// The value A^e that the issuer raised to 1/e, recomputed from public data.
Int cl_signed_quotient(const ClPublicKey& pub, std::span<const Int> slots, const Int& v,
                       const std::optional<Int>& hidden_commitment);

// Issuer's proof that A = Q^(1/e): knowledge of e^-1 mod p'q'.
struct ClSignatureProof {
  Int challenge;
  Int response;
};

ClSignatureProof cl_prove_signature(const ClIssuerKeyPair& keys, const Int& quotient,
                                    const ClSignature& sig, std::string_view nonce,
                                    const ParameterProfile& params, Rng& rng);
bool cl_verify_signature_proof(const ClPublicKey& pub, const Int& quotient, const Int& A,
                               const ClSignatureProof& proof, std::string_view nonce,
                               const ParameterProfile& params);

void to_json(json& j, const ClPublicKey& k);
void from_json(const json& j, ClPublicKey& k);
void to_json(json& j, const ClIssuerKeyPair& k);
void from_json(const json& j, ClIssuerKeyPair& k);
void to_json(json& j, const ClSignature& s);
void from_json(const json& j, ClSignature& s);
void to_json(json& j, const ClSignatureProof& p);
void from_json(const json& j, ClSignatureProof& p);

}  // namespace fcguard::crypto
