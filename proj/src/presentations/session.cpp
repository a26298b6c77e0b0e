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

#include "fcguard/presentations/session.hpp"

#include "fcguard/error.hpp"

namespace fcguard::presentations {

HolderSession::HolderSession(const credentials::Wallet& wallet, const ledger::Registry& registry,
                             std::string nonce, crypto::Rng& rng)
    : wallet_(wallet), registry_(registry), nonce_(std::move(nonce)), rng_(rng) {}

Presentation HolderSession::present(std::string_view definition_id,
                                    const std::vector<std::string>& disclose,
                                    const std::vector<std::string>& commit) {
  const auto& cred = wallet_.get(definition_id);
  std::map<std::string, Int> rho;
  auto p = create_presentation(registry_, cred, wallet_.link_secret(), disclose, commit, nonce_,
                               rng_, &rho);
  auto id = p.id();
  for (auto& [name, r] : rho) {
    openings_[{id, name}] = CommitmentOpening{cred.attribute(name).encoded, std::move(r)};
  }
  return p;
}

const CommitmentOpening& HolderSession::opening(const Presentation& p,
                                                std::string_view attr) const {
  auto it = openings_.find(std::make_pair(p.id(), std::string(attr)));
  enforce(it != openings_.end(), ErrorCode::kInvalidArgument,
          "no opening for '" + std::string(attr) + "' in this session");
  return it->second;
}

EqualityProof HolderSession::prove_equality(const Presentation& a, std::string_view attr_a,
                                            const Presentation& b, std::string_view attr_b) {
  return presentations::prove_equality(registry_, nonce_, a, attr_a, opening(a, attr_a), b, attr_b,
                                       opening(b, attr_b), rng_);
}

VerifiableEncryptionProof HolderSession::prove_encryption(const Presentation& p,
                                                          std::string_view attr,
                                                          const crypto::EncryptionPublicKey& pk) {
  return prove_verifiable_encryption(registry_, nonce_, p, attr, opening(p, attr), pk, rng_);
}

PredicateProof HolderSession::prove_predicate_ge(const Presentation& p, std::string_view attr,
                                                 const Int& threshold) {
  return presentations::prove_predicate_ge(registry_, nonce_, p, attr, opening(p, attr),
                                           threshold, rng_);
}

void to_json(json& j, const PresentationBundle& b) {
  j = json{{"nonce", b.nonce},
           {"presentations", b.presentations},
           {"equalities", b.equalities},
           {"encryptions", b.encryptions},
           {"predicates", b.predicates}};
}

void from_json(const json& j, PresentationBundle& b) {
  b.nonce = j.at("nonce").get<std::string>();
  b.presentations = j.at("presentations").get<std::vector<Presentation>>();
  b.equalities = j.at("equalities").get<std::vector<EqualityProof>>();
  b.encryptions = j.at("encryptions").get<std::vector<VerifiableEncryptionProof>>();
  b.predicates = j.at("predicates").get<std::vector<PredicateProof>>();
}

}  // namespace fcguard::presentations
