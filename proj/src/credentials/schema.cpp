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

#include "fcguard/credentials/schema.hpp"

#include <algorithm>

#include "fcguard/error.hpp"

namespace fcguard::credentials {

std::string_view to_string(IssuerRole role) {
  return role == IssuerRole::kPlatform ? "platform" : "bank";
}

IssuerRole parse_issuer_role(std::string_view name) {
  if (name == "platform") return IssuerRole::kPlatform;
  if (name == "bank") return IssuerRole::kBank;
  fail(ErrorCode::kParseError, "unknown issuer role: " + std::string(name));
}

std::size_t Schema::slot_of(std::string_view name) const {
  if (name == kLinkSecretName) return kLinkSecretSlot;
  auto it = std::find(attributes.begin(), attributes.end(), name);
  enforce(it != attributes.end(), ErrorCode::kSchemaMismatch,
          "schema " + id + " has no attribute '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - attributes.begin()) + 1;
}

Schema platform_schema(std::string id) {
  return Schema{std::move(id), IssuerRole::kPlatform, {"name", "birthday", "ssn"}};
}

Schema bank_schema(std::string id) {
  return Schema{std::move(id), IssuerRole::kBank, {"bank_name", "account", "ssn"}};
}

bool schema_conforms(const Schema& schema) {
  auto expected = schema.role == IssuerRole::kPlatform ? platform_schema() : bank_schema();
  return !schema.id.empty() && schema.attributes == expected.attributes;
}

Issuer make_issuer(Schema schema, std::string definition_id, crypto::ClIssuerKeyPair keys) {
  enforce(schema_conforms(schema), ErrorCode::kSchemaMismatch,
          "schema " + schema.id + " does not carry the attributes of its issuer role");
  enforce(keys.pub.slot_count() == schema.slot_count(), ErrorCode::kSchemaMismatch,
          "issuer key slot count does not match schema " + schema.id);
  CredentialDefinition def{std::move(definition_id), schema.id, keys.profile, keys.pub};
  return Issuer{std::move(schema), std::move(def), std::move(keys)};
}

void publish_definition(ledger::Registry& registry, const Schema& schema,
                        const CredentialDefinition& definition) {
  enforce(definition.schema_id == schema.id, ErrorCode::kSchemaMismatch,
          "definition " + definition.id + " does not reference schema " + schema.id);
  enforce(definition.public_key.slot_count() == schema.slot_count(), ErrorCode::kSchemaMismatch,
          "definition " + definition.id + " has the wrong slot count");
  std::string schema_bytes = crypto::canonical_dump(json(schema));
  if (registry.contains(ledger::EntryKind::kSchema, schema.id)) {
    enforce(registry.get(ledger::EntryKind::kSchema, schema.id).payload == schema_bytes,
            ErrorCode::kDuplicateId, "a different schema is registered as " + schema.id);
  } else {
    registry.put(schema.id, ledger::EntryKind::kSchema, schema_bytes);
  }
  registry.put(definition.id, ledger::EntryKind::kCredentialDefinition,
               crypto::canonical_dump(json(definition)));
}

Schema fetch_schema(const ledger::Registry& registry, std::string_view id) {
  return registry.get_json(ledger::EntryKind::kSchema, id).get<Schema>();
}

CredentialDefinition fetch_definition(const ledger::Registry& registry, std::string_view id) {
  auto def = registry.get_json(ledger::EntryKind::kCredentialDefinition, id)
                 .get<CredentialDefinition>();
  auto schema = fetch_schema(registry, def.schema_id);
  enforce(def.public_key.slot_count() == schema.slot_count(), ErrorCode::kSchemaMismatch,
          "definition " + def.id + " disagrees with its schema");
  return def;
}

void to_json(json& j, const Schema& s) {
  j = json{{"id", s.id}, {"role", to_string(s.role)}, {"attributes", s.attributes}};
}

void from_json(const json& j, Schema& s) {
  s.id = j.at("id").get<std::string>();
  s.role = parse_issuer_role(j.at("role").get<std::string>());
  s.attributes = j.at("attributes").get<std::vector<std::string>>();
}

void to_json(json& j, const CredentialDefinition& d) {
  j = json{{"id", d.id},
           {"schema_id", d.schema_id},
           {"profile", crypto::profile(d.profile).name()},
           {"public_key", d.public_key}};
}

void from_json(const json& j, CredentialDefinition& d) {
  d.id = j.at("id").get<std::string>();
  d.schema_id = j.at("schema_id").get<std::string>();
  d.profile = crypto::parse_profile(j.at("profile").get<std::string>());
  d.public_key = j.at("public_key").get<crypto::ClPublicKey>();
}

}  // namespace fcguard::credentials
