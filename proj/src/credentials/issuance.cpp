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

#include "fcguard/credentials/issuance.hpp"

#include <algorithm>

#include "fcguard/crypto/transcript.hpp"
#include "fcguard/error.hpp"

namespace fcguard::credentials {

using crypto::bit_length;
using crypto::powm;

namespace {

constexpr std::string_view kRequestLabel = "fcguard/credential-request";

unsigned blinding_bits(const crypto::ParameterProfile& params) {
  return params.modulus_bits() + params.stat_bits;
}

Int request_challenge(const CredentialDefinition& def, const CredentialRequest& req,
                      const Int& commitment) {
  crypto::Transcript t(kRequestLabel);
  t.absorb(def.id).absorb(req.nonce).absorb(def.public_key.n).absorb(req.blinded_secret);
  t.absorb(commitment);
  return t.challenge(def.params().challenge_bits);
}

bool fits(const Int& x, unsigned bits) { return x >= 0 && bit_length(x) <= bits; }

}  // namespace

LinkSecret LinkSecret::generate(crypto::Rng& rng) {
  return LinkSecret{rng.bits(crypto::profile(crypto::Profile::kToy).attribute_bits)};
}

PendingRequest create_credential_request(const ledger::Registry& registry,
                                         std::string_view definition_id,
                                         const LinkSecret& secret, std::string nonce,
                                         crypto::Rng& rng) {
  auto def = fetch_definition(registry, definition_id);
  const auto& params = def.params();
  const auto& pub = def.public_key;
  Int v_prime = rng.bits(blinding_bits(params));

  CredentialRequest req;
  req.definition_id = def.id;
  req.nonce = std::move(nonce);
  req.blinded_secret = powm(pub.R[kLinkSecretSlot], secret.value, pub.n) *
                       powm(pub.S, v_prime, pub.n) % pub.n;

  Int r_secret = rng.bits(params.response_bits(params.attribute_bits));
  Int r_blinding = rng.bits(params.response_bits(blinding_bits(params)));
  Int commitment = powm(pub.R[kLinkSecretSlot], r_secret, pub.n) *
                   powm(pub.S, r_blinding, pub.n) % pub.n;
  req.challenge = request_challenge(def, req, commitment);
  req.s_secret = r_secret + req.challenge * secret.value;
  req.s_blinding = r_blinding + req.challenge * v_prime;
  return PendingRequest{std::move(req), v_prime};
}

bool verify_credential_request(const CredentialDefinition& def, const CredentialRequest& req,
                               std::string_view expected_nonce) {
  try {
    const auto& params = def.params();
    const auto& pub = def.public_key;
    if (req.definition_id != def.id || req.nonce != expected_nonce) return false;
    if (req.blinded_secret <= 0 || req.blinded_secret >= pub.n) return false;
    if (!fits(req.challenge, params.challenge_bits)) return false;
    if (!fits(req.s_secret, params.response_bits(params.attribute_bits) + 1)) return false;
    if (!fits(req.s_blinding, params.response_bits(blinding_bits(params)) + 1)) return false;
    Int commitment = powm(req.blinded_secret, -req.challenge, pub.n) *
                     powm(pub.R[kLinkSecretSlot], req.s_secret, pub.n) % pub.n *
                     powm(pub.S, req.s_blinding, pub.n) % pub.n;
    return request_challenge(def, req, commitment) == req.challenge;
  } catch (const Error&) {
    return false;
  }
}

const CredentialAttribute& Credential::attribute(std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.name == name) return a;
  }
  fail(ErrorCode::kSchemaMismatch, "credential has no attribute '" + std::string(name) + "'");
}

Credential issue_credential(const Issuer& issuer, const CredentialRequest& request,
                            std::string_view expected_nonce,
                            const std::vector<crypto::RawAttribute>& values, crypto::Rng& rng) {
  const auto& def = issuer.definition;
  enforce(request.definition_id == def.id, ErrorCode::kSchemaMismatch,
          "request targets definition " + request.definition_id + ", not " + def.id);
  enforce(values.size() == issuer.schema.attributes.size(), ErrorCode::kSchemaMismatch,
          "schema " + issuer.schema.id + " expects " +
              std::to_string(issuer.schema.attributes.size()) + " attributes, got " +
              std::to_string(values.size()));
  enforce(verify_credential_request(def, request, expected_nonce), ErrorCode::kVerificationFailed,
          "credential request proof does not verify");

  Credential cred;
  cred.definition_id = def.id;
  cred.nonce = request.nonce;
  std::vector<std::optional<Int>> slots{std::nullopt};
  for (std::size_t i = 0; i < values.size(); ++i) {
    Int encoded = crypto::encode_attribute(values[i]);
    cred.attributes.push_back({issuer.schema.attributes[i], values[i], encoded});
    slots.emplace_back(encoded);
  }
  cred.signature = crypto::cl_sign(issuer.keys, slots, request.blinded_secret, def.params(), rng);

  std::vector<Int> plain(1, 0);
  for (const auto& a : cred.attributes) plain.push_back(a.encoded);
  Int quotient = crypto::cl_signed_quotient(def.public_key, plain, cred.signature.v,
                                            request.blinded_secret);
  cred.issuer_proof =
      crypto::cl_prove_signature(issuer.keys, quotient, cred.signature, request.nonce,
                                 def.params(), rng);
  return cred;
}

std::vector<Int> credential_slots(const Credential& credential, const LinkSecret& secret) {
  std::vector<Int> slots{secret.value};
  for (const auto& a : credential.attributes) slots.push_back(a.encoded);
  return slots;
}

Credential holder_complete(const ledger::Registry& registry, const Credential& issued,
                           const PendingRequest& pending, const LinkSecret& secret) {
  CredentialDefinition def;
  Schema schema;
  try {
    def = fetch_definition(registry, issued.definition_id);
    schema = fetch_schema(registry, def.schema_id);
  } catch (const Error& e) {
    fail(ErrorCode::kVerificationFailed, std::string("credential rejected: ") + e.what());
  }
  auto reject = [](const std::string& why) {
    fail(ErrorCode::kVerificationFailed, "credential rejected: " + why);
  };
  if (issued.definition_id != pending.request.definition_id) reject("definition mismatch");
  if (issued.nonce != pending.request.nonce) reject("nonce mismatch");
  if (issued.attributes.size() != schema.attributes.size()) reject("attribute count");
  std::vector<Int> plain(1, 0);
  for (std::size_t i = 0; i < issued.attributes.size(); ++i) {
    const auto& a = issued.attributes[i];
    if (a.name != schema.attributes[i]) reject("attribute name " + a.name);
    Int expect;
    try {
      expect = crypto::encode_attribute(a.raw);
    } catch (const Error&) {
      reject("attribute " + a.name + " is not encodable");
    }
    if (expect != a.encoded) reject("attribute " + a.name + " encoding");
    plain.push_back(a.encoded);
  }
  const auto& pub = def.public_key;
  Int quotient;
  try {
    quotient = crypto::cl_signed_quotient(pub, plain, issued.signature.v,
                                          pending.request.blinded_secret);
  } catch (const Error&) {
    reject("malformed signature");
  }
  if (!crypto::cl_verify_signature_proof(pub, quotient, issued.signature.A, issued.issuer_proof,
                                         issued.nonce, def.params())) {
    reject("issuer signature proof");
  }
  Credential done = issued;
  done.signature.v += pending.v_prime;
  if (!crypto::cl_verify(pub, credential_slots(done, secret), done.signature)) {
    reject("signature");
  }
  return done;
}

void to_json(json& j, const CredentialRequest& r) {
  j = json{{"definition_id", r.definition_id}, {"nonce", r.nonce},
           {"U", r.blinded_secret},            {"c", r.challenge},
           {"s_secret", r.s_secret},           {"s_blinding", r.s_blinding}};
}

void from_json(const json& j, CredentialRequest& r) {
  r.definition_id = j.at("definition_id").get<std::string>();
  r.nonce = j.at("nonce").get<std::string>();
  r.blinded_secret = j.at("U").get<Int>();
  r.challenge = j.at("c").get<Int>();
  r.s_secret = j.at("s_secret").get<Int>();
  r.s_blinding = j.at("s_blinding").get<Int>();
}

void to_json(json& j, const CredentialAttribute& a) {
  j = json{{"name", a.name}, {"raw", crypto::raw_to_json(a.raw)}, {"encoded", a.encoded}};
}

void from_json(const json& j, CredentialAttribute& a) {
  a.name = j.at("name").get<std::string>();
  a.raw = crypto::raw_from_json(j.at("raw"));
  a.encoded = j.at("encoded").get<Int>();
}

void to_json(json& j, const Credential& c) {
  j = json{{"definition_id", c.definition_id},
           {"nonce", c.nonce},
           {"attributes", c.attributes},
           {"signature", c.signature},
           {"issuer_proof", c.issuer_proof}};
}

void from_json(const json& j, Credential& c) {
  c.definition_id = j.at("definition_id").get<std::string>();
  c.nonce = j.at("nonce").get<std::string>();
  c.attributes = j.at("attributes").get<std::vector<CredentialAttribute>>();
  c.signature = j.at("signature").get<crypto::ClSignature>();
  c.issuer_proof = j.at("issuer_proof").get<crypto::ClSignatureProof>();
}

}  // namespace fcguard::credentials
