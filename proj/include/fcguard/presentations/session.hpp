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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fcguard/presentations/proofs.hpp"

namespace fcguard::presentations {

// Holder-side proof session. Every presentation and proof it emits is
// bound to one verifier-issued session nonce, and it remembers commitment
// openings so later proofs can refer to earlier presentations.
class HolderSession {
 public:
  HolderSession(const credentials::Wallet& wallet, const ledger::Registry& registry,
                std::string nonce, crypto::Rng& rng);

  const std::string& nonce() const { return nonce_; }

  Presentation present(std::string_view definition_id, const std::vector<std::string>& disclose,
                       const std::vector<std::string>& commit);
  EqualityProof prove_equality(const Presentation& a, std::string_view attr_a,
                               const Presentation& b, std::string_view attr_b);
  VerifiableEncryptionProof prove_encryption(const Presentation& p, std::string_view attr,
                                             const crypto::EncryptionPublicKey& pk);
  PredicateProof prove_predicate_ge(const Presentation& p, std::string_view attr,
                                    const Int& threshold);

  // Throws Error(kInvalidArgument) if `p` was not produced by this session
  // or `attr` is not committed in it.
  const CommitmentOpening& opening(const Presentation& p, std::string_view attr) const;

 private:
  const credentials::Wallet& wallet_;
  const ledger::Registry& registry_;
  std::string nonce_;
  crypto::Rng& rng_;
  std::map<std::pair<std::string, std::string>, CommitmentOpening, std::less<>> openings_;
};

// What travels to a verifier in one exchange step.
struct PresentationBundle {
  std::string nonce;
  std::vector<Presentation> presentations;
  std::vector<EqualityProof> equalities;
  std::vector<VerifiableEncryptionProof> encryptions;
  std::vector<PredicateProof> predicates;
};

void to_json(json& j, const PresentationBundle& b);
void from_json(const json& j, PresentationBundle& b);

}  // namespace fcguard::presentations
