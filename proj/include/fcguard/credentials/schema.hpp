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
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/crypto/cl.hpp"
#include "fcguard/crypto/params.hpp"
#include "fcguard/ledger/registry.hpp"

namespace fcguard::credentials {

using crypto::json;

enum class IssuerRole { kPlatform, kBank };

std::string_view to_string(IssuerRole role);
IssuerRole parse_issuer_role(std::string_view name);

// Slot 0 of every credential holds the holder's link secret; the named
// attributes occupy slots 1..n in order.
inline constexpr std::size_t kLinkSecretSlot = 0;
inline constexpr std::string_view kLinkSecretName = "link_secret";

struct Schema {
  std::string id;
  IssuerRole role = IssuerRole::kPlatform;
  std::vector<std::string> attributes;

  std::size_t slot_count() const { return attributes.size() + 1; }
  // Throws Error(kSchemaMismatch) for names the schema does not carry.
  std::size_t slot_of(std::string_view name) const;
  bool operator==(const Schema&) const = default;
};

// Attribute names fixed per issuer role.
Schema platform_schema(std::string id = "fcguard.platform-kyc.v1");
Schema bank_schema(std::string id = "fcguard.bank-account.v1");
bool schema_conforms(const Schema& schema);

struct CredentialDefinition {
  std::string id;
  std::string schema_id;
  crypto::Profile profile = crypto::Profile::kToy;
  crypto::ClPublicKey public_key;

  const crypto::ParameterProfile& params() const { return crypto::profile(profile); }
  bool operator==(const CredentialDefinition&) const = default;
};

// An issuer's schema, published definition and signing key.
struct Issuer {
  Schema schema;
  CredentialDefinition definition;
  crypto::ClIssuerKeyPair keys;
};

// Throws Error(kSchemaMismatch) if the key's slot count differs from
// schema.slot_count() or the schema does not conform to its role.
Issuer make_issuer(Schema schema, std::string definition_id, crypto::ClIssuerKeyPair keys);

// Registers the schema (re-publishing identical schema bytes is a no-op)
// and the definition (a second definition under one id throws
// Error(kDuplicateId)).
void publish_definition(ledger::Registry& registry, const Schema& schema,
                        const CredentialDefinition& definition);
Schema fetch_schema(const ledger::Registry& registry, std::string_view id);
// Also checks that the referenced schema exists and the slot counts agree.
CredentialDefinition fetch_definition(const ledger::Registry& registry, std::string_view id);

void to_json(json& j, const Schema& s);
void from_json(const json& j, Schema& s);
void to_json(json& j, const CredentialDefinition& d);
void from_json(const json& j, CredentialDefinition& d);

}  // namespace fcguard::credentials
