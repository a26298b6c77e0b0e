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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/credentials/wallet.hpp"
#include "fcguard/crypto/commitment.hpp"

namespace fcguard::presentations {

using crypto::Int;
using crypto::json;

// Registry id of the shared prime-order commitment key every verifier uses
// to relate hidden attributes across credentials and ciphertexts.
inline constexpr std::string_view kCommitmentKeyId = "fcguard.commitment-key";

void publish_commitment_key(ledger::Registry& registry, const crypto::CommitmentKey& key);
crypto::CommitmentKey fetch_commitment_key(const ledger::Registry& registry);

struct DisclosedAttribute {
  crypto::RawAttribute raw;
  Int encoded;
};

// Randomized CL signature A' = A S^r plus a Fiat-Shamir proof of knowledge
// of (e, v, hidden attributes). Attributes listed in `commitments` also get
// C = g^m h^rho in the commitment group, tied to the same integer response.
struct Presentation {
  std::string definition_id;
  std::string nonce;
  std::map<std::string, DisclosedAttribute> disclosed;
  std::vector<std::string> hidden;  // includes the link secret
  std::map<std::string, Int> commitments;
  Int A_prime;
  Int challenge;
  Int s_e;
  Int s_v;
  std::map<std::string, Int> s_m;    // one per hidden attribute
  std::map<std::string, Int> s_rho;  // one per commitment

  // Digest of the canonical encoding; other proofs reference it.
  std::string id() const;
};

// Throws Error(kSchemaMismatch) for names outside the schema.
Presentation create_presentation(const ledger::Registry& registry,
                                 const credentials::Credential& credential,
                                 const credentials::LinkSecret& secret,
                                 const std::vector<std::string>& disclose,
                                 const std::vector<std::string>& commit,
                                 std::string nonce, crypto::Rng& rng,
                                 std::map<std::string, Int>* rho_out = nullptr);

bool verify_presentation(const ledger::Registry& registry, const Presentation& p,
                         std::string_view expected_nonce);

void to_json(json& j, const DisclosedAttribute& a);
void from_json(const json& j, DisclosedAttribute& a);
void to_json(json& j, const Presentation& p);
void from_json(const json& j, Presentation& p);

}  // namespace fcguard::presentations
