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

#include "fcguard/credentials/schema.hpp"
#include "fcguard/crypto/encoding.hpp"
#include "fcguard/crypto/rng.hpp"

namespace fcguard::credentials {

using crypto::Int;

// Holder-local. Never serialized except blinded inside a request.
struct LinkSecret {
  Int value;
  static LinkSecret generate(crypto::Rng& rng);
};

// U = R_0^ls * S^v' with a proof of knowledge of (ls, v').
struct CredentialRequest {
  std::string definition_id;
  std::string nonce;
  Int blinded_secret;
  Int challenge;
  Int s_secret;
  Int s_blinding;
};

// What the holder keeps between request and issuance.
struct PendingRequest {
  CredentialRequest request;
  Int v_prime;
};

PendingRequest create_credential_request(const ledger::Registry& registry,
                                         std::string_view definition_id,
                                         const LinkSecret& secret, std::string nonce,
                                         crypto::Rng& rng);
bool verify_credential_request(const CredentialDefinition& definition,
                               const CredentialRequest& request, std::string_view expected_nonce);

struct CredentialAttribute {
  std::string name;
  crypto::RawAttribute raw;
  Int encoded;
  bool operator==(const CredentialAttribute&) const = default;
};

struct Credential {
  std::string definition_id;
  std::string nonce;
  std::vector<CredentialAttribute> attributes;  // schema order, link secret excluded
  crypto::ClSignature signature;
  crypto::ClSignatureProof issuer_proof;

  const CredentialAttribute& attribute(std::string_view name) const;
};

// Issuer side. Throws Error(kVerificationFailed) for a bad request proof or
// nonce, Error(kSchemaMismatch) when `values` does not fit the schema.
// The returned signature carries only the issuer's share of v.
Credential issue_credential(const Issuer& issuer, const CredentialRequest& request,
                            std::string_view expected_nonce,
                            const std::vector<crypto::RawAttribute>& values, crypto::Rng& rng);

// Slot vector (link secret in slot 0) the signature covers.
std::vector<Int> credential_slots(const Credential& credential, const LinkSecret& secret);

// Holder side: checks encodings, the issuer's correctness proof and the
// completed CL signature. Returns the credential with v = v' + v''.
// Throws Error(kVerificationFailed) on any failure.
Credential holder_complete(const ledger::Registry& registry, const Credential& issued,
                           const PendingRequest& pending, const LinkSecret& secret);

void to_json(json& j, const CredentialRequest& r);
void from_json(const json& j, CredentialRequest& r);
void to_json(json& j, const CredentialAttribute& a);
void from_json(const json& j, CredentialAttribute& a);
void to_json(json& j, const Credential& c);
void from_json(const json& j, Credential& c);

}  // namespace fcguard::credentials
