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

#include <string>
#include <string_view>
#include <vector>

#include "fcguard/crypto/encryption.hpp"
#include "fcguard/presentations/presentation.hpp"

namespace fcguard::presentations {

// Opening (m, rho) of a presentation commitment C = g^m h^rho.
struct CommitmentOpening {
  Int m;
  Int rho;
};

// Proof that two presentation commitments hide the same integer: knowledge
// of delta with C_a / C_b = h^delta.
struct EqualityProof {
  std::string presentation_a;
  std::string attribute_a;
  std::string presentation_b;
  std::string attribute_b;
  Int challenge;
  Int response;
};

// Throws Error(kProofRefused) when the openings differ.
EqualityProof prove_equality(const ledger::Registry& registry, std::string_view nonce,
                             const Presentation& a, std::string_view attr_a,
                             const CommitmentOpening& open_a, const Presentation& b,
                             std::string_view attr_b, const CommitmentOpening& open_b,
                             crypto::Rng& rng);
bool verify_equality(const ledger::Registry& registry, const Presentation& a,
                     const Presentation& b, const EqualityProof& proof,
                     std::string_view expected_nonce);

// Ciphertext under a third party's key plus a proof that its plaintext is
// the integer inside a presentation commitment. For ElGamal, s_r answers
// for the encryption exponent (mod Q); for Paillier it is the unit
// response (mod N).
struct VerifiableEncryptionProof {
  std::string presentation;
  std::string attribute;
  std::string key_id;
  crypto::Ciphertext ciphertext;
  Int challenge;
  Int s_m;
  Int s_rho;
  Int s_r;
};

// Throws Error(kOutOfRange) if the plaintext does not fit the scheme.
VerifiableEncryptionProof prove_verifiable_encryption(const ledger::Registry& registry,
                                                      std::string_view nonce,
                                                      const Presentation& p,
                                                      std::string_view attr,
                                                      const CommitmentOpening& opening,
                                                      const crypto::EncryptionPublicKey& pk,
                                                      crypto::Rng& rng);
bool verify_verifiable_encryption(const ledger::Registry& registry, const Presentation& p,
                                  const VerifiableEncryptionProof& proof,
                                  const crypto::EncryptionPublicKey& pk,
                                  std::string_view expected_nonce);

// Width of the bit decomposition of (threshold - value).
inline constexpr unsigned kPredicateBits = 27;

struct PredicateBit {
  Int commitment;  // g^b h^rho_k, b in {0, 1}
  Int c0;
  Int c1;
  Int s0;
  Int s1;
};

// Proof that the committed value is at most `threshold`.
struct PredicateProof {
  std::string presentation;
  std::string attribute;
  Int threshold;
  std::vector<PredicateBit> bits;
  Int challenge;
  Int response;
};

// Throws Error(kProofRefused) unless 0 <= threshold - m < 2^27.
PredicateProof prove_predicate_ge(const ledger::Registry& registry, std::string_view nonce,
                                  const Presentation& p, std::string_view attr,
                                  const CommitmentOpening& opening, const Int& threshold,
                                  crypto::Rng& rng);
bool verify_predicate(const ledger::Registry& registry, const Presentation& p,
                      const PredicateProof& proof, const Int& threshold,
                      std::string_view expected_nonce);

// Birthday cut-off (YYYYMMDD) for "at least `years` old on `today`".
Int age_threshold(std::int64_t today_yyyymmdd, unsigned years);

void to_json(json& j, const EqualityProof& p);
void from_json(const json& j, EqualityProof& p);
void to_json(json& j, const VerifiableEncryptionProof& p);
void from_json(const json& j, VerifiableEncryptionProof& p);
void to_json(json& j, const PredicateBit& b);
void from_json(const json& j, PredicateBit& b);
void to_json(json& j, const PredicateProof& p);
void from_json(const json& j, PredicateProof& p);

}  // namespace fcguard::presentations
