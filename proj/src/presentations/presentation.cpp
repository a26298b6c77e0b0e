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

#include "fcguard/presentations/presentation.hpp"

#include <algorithm>
#include <set>

#include "fcguard/crypto/hash.hpp"
#include "fcguard/crypto/transcript.hpp"
#include "fcguard/error.hpp"

namespace fcguard::presentations {

using crypto::bit_length;
using crypto::powm;

namespace {

constexpr std::string_view kLabel = "fcguard/presentation";

bool fits(const Int& x, unsigned bits) { return x >= 0 && bit_length(x) <= bits; }

struct Bounds {
  unsigned e, v, m;
};

Bounds response_bounds(const crypto::ParameterProfile& params) {
  return {params.response_bits(params.e_range_bits), params.response_bits(params.v_bits() + 1),
          params.response_bits(params.attribute_bits)};
}

json disclosed_json(const std::map<std::string, DisclosedAttribute>& disclosed) {
  json j = json::object();
  for (const auto& [name, a] : disclosed) j[name] = a;
  return j;
}

Int presentation_challenge(const Presentation& p, const crypto::ClPublicKey& pub,
                           const Int& t_cl, const std::map<std::string, Int>& t_commit,
                           unsigned bits) {
  crypto::Transcript t(kLabel);
  t.absorb(p.definition_id).absorb(p.nonce).absorb_json(disclosed_json(p.disclosed));
  t.absorb_json(json(p.hidden));
  t.absorb(pub.n).absorb(p.A_prime);
  for (const auto& [name, C] : p.commitments) t.absorb(name).absorb(C);
  t.absorb(t_cl);
  for (const auto& [name, T] : t_commit) t.absorb(name).absorb(T);
  return t.challenge(bits);
}

// Z / (prod_{disclosed} R_i^m_i * A'^(2^(e_bits-1))) mod n.
Int target_value(const crypto::ClPublicKey& pub, const credentials::Schema& schema,
                 const Presentation& p, const crypto::ParameterProfile& params) {
  Int denom = powm(p.A_prime, crypto::pow2(params.e_bits - 1), pub.n);
  for (const auto& [name, a] : p.disclosed) {
    denom = denom * powm(pub.R[schema.slot_of(name)], a.encoded, pub.n) % pub.n;
  }
  return pub.Z * crypto::inverse(denom, pub.n) % pub.n;
}

}  // namespace

void publish_commitment_key(ledger::Registry& registry, const crypto::CommitmentKey& key) {
  registry.put(std::string(kCommitmentKeyId), ledger::EntryKind::kParameters,
               crypto::canonical_dump(json(key)));
}

crypto::CommitmentKey fetch_commitment_key(const ledger::Registry& registry) {
  return registry.get_json(ledger::EntryKind::kParameters, kCommitmentKeyId)
      .get<crypto::CommitmentKey>();
}

std::string Presentation::id() const { return crypto::sha256_hex(crypto::canonical_dump(*this)); }

Presentation create_presentation(const ledger::Registry& registry,
                                 const credentials::Credential& credential,
                                 const credentials::LinkSecret& secret,
                                 const std::vector<std::string>& disclose,
                                 const std::vector<std::string>& commit, std::string nonce,
                                 crypto::Rng& rng, std::map<std::string, Int>* rho_out) {
  auto def = credentials::fetch_definition(registry, credential.definition_id);
  auto schema = credentials::fetch_schema(registry, def.schema_id);
  auto ck = fetch_commitment_key(registry);
  const auto& params = def.params();
  const auto& pub = def.public_key;

  std::set<std::string> disclose_set(disclose.begin(), disclose.end());
  std::set<std::string> commit_set(commit.begin(), commit.end());
  for (const auto& name : disclose_set) schema.slot_of(name);
  for (const auto& name : commit_set) {
    enforce(name != credentials::kLinkSecretName && !disclose_set.contains(name),
            ErrorCode::kInvalidArgument, "cannot commit to '" + name + "'");
    schema.slot_of(name);
  }
  enforce(!disclose_set.contains(std::string(credentials::kLinkSecretName)),
          ErrorCode::kInvalidArgument, "the link secret is never disclosed");

  Presentation p;
  p.definition_id = def.id;
  p.nonce = std::move(nonce);
  std::map<std::string, Int> values{{std::string(credentials::kLinkSecretName), secret.value}};
  p.hidden.emplace_back(credentials::kLinkSecretName);
  for (const auto& a : credential.attributes) {
    if (disclose_set.contains(a.name)) {
      p.disclosed[a.name] = DisclosedAttribute{a.raw, a.encoded};
    } else {
      p.hidden.push_back(a.name);
      values[a.name] = a.encoded;
    }
  }

  const auto& sig = credential.signature;
  Int r_A = rng.bits(params.modulus_bits() + params.stat_bits);
  p.A_prime = sig.A * powm(pub.S, r_A, pub.n) % pub.n;
  Int v_prime = sig.v - sig.e * r_A;
  Int e_prime = sig.e - crypto::pow2(params.e_bits - 1);

  auto bounds = response_bounds(params);
  Int r_e = rng.bits(bounds.e);
  Int r_v = rng.bits(bounds.v);
  std::map<std::string, Int> r_m;
  Int t_cl = powm(p.A_prime, r_e, pub.n) * powm(pub.S, r_v, pub.n) % pub.n;
  for (const auto& name : p.hidden) {
    r_m[name] = rng.bits(bounds.m);
    t_cl = t_cl * powm(pub.R[schema.slot_of(name)], r_m[name], pub.n) % pub.n;
  }

  std::map<std::string, Int> rho, r_rho, t_commit;
  for (const auto& name : commit_set) {
    rho[name] = rng.below(ck.order);
    r_rho[name] = rng.below(ck.order);
    p.commitments[name] = crypto::commit_with(ck, values[name], rho[name]).value;
    t_commit[name] = powm(ck.g, r_m[name], ck.modulus) * powm(ck.h, r_rho[name], ck.modulus) %
                     ck.modulus;
  }

  p.challenge = presentation_challenge(p, pub, t_cl, t_commit, params.challenge_bits);
  p.s_e = r_e + p.challenge * e_prime;
  p.s_v = r_v + p.challenge * v_prime;
  for (const auto& name : p.hidden) p.s_m[name] = r_m[name] + p.challenge * values[name];
  for (const auto& name : commit_set) {
    p.s_rho[name] = crypto::mod(r_rho[name] + p.challenge * rho[name], ck.order);
  }
  if (rho_out) *rho_out = std::move(rho);
  return p;
}

bool verify_presentation(const ledger::Registry& registry, const Presentation& p,
                         std::string_view expected_nonce) {
  try {
    if (p.nonce != expected_nonce) return false;
    auto def = credentials::fetch_definition(registry, p.definition_id);
    auto schema = credentials::fetch_schema(registry, def.schema_id);
    auto ck = fetch_commitment_key(registry);
    const auto& params = def.params();
    const auto& pub = def.public_key;

    // Every slot is either disclosed or hidden, never both.
    std::set<std::string> hidden(p.hidden.begin(), p.hidden.end());
    if (hidden.size() != p.hidden.size()) return false;
    if (!hidden.contains(std::string(credentials::kLinkSecretName))) return false;
    if (hidden.size() + p.disclosed.size() != schema.slot_count()) return false;
    for (const auto& name : schema.attributes) {
      if (hidden.contains(name) == p.disclosed.contains(name)) return false;
    }
    for (const auto& [name, a] : p.disclosed) {
      if (crypto::encode_attribute(a.raw) != a.encoded) return false;
    }
    if (p.s_m.size() != hidden.size() || p.s_rho.size() != p.commitments.size()) return false;
    for (const auto& [name, C] : p.commitments) {
      if (!hidden.contains(name) || name == credentials::kLinkSecretName) return false;
      if (C <= 0 || C >= ck.modulus || !p.s_rho.contains(name)) return false;
      if (p.s_rho.at(name) < 0 || p.s_rho.at(name) >= ck.order) return false;
    }

    auto bounds = response_bounds(params);
    if (p.A_prime <= 1 || p.A_prime >= pub.n || !crypto::coprime(p.A_prime, pub.n)) return false;
    if (!fits(p.challenge, params.challenge_bits)) return false;
    if (!fits(p.s_e, bounds.e + 1) || !fits(p.s_v, bounds.v + 1)) return false;

    Int target = target_value(pub, schema, p, params);
    Int t_cl = powm(target, -p.challenge, pub.n) * powm(p.A_prime, p.s_e, pub.n) % pub.n *
               powm(pub.S, p.s_v, pub.n) % pub.n;
    for (const auto& name : p.hidden) {
      auto it = p.s_m.find(name);
      if (it == p.s_m.end() || !fits(it->second, bounds.m + 1)) return false;
      t_cl = t_cl * powm(pub.R[schema.slot_of(name)], it->second, pub.n) % pub.n;
    }
    std::map<std::string, Int> t_commit;
    for (const auto& [name, C] : p.commitments) {
      t_commit[name] = powm(C, -p.challenge, ck.modulus) *
                       powm(ck.g, p.s_m.at(name), ck.modulus) % ck.modulus *
                       powm(ck.h, p.s_rho.at(name), ck.modulus) % ck.modulus;
    }
    return presentation_challenge(p, pub, t_cl, t_commit, params.challenge_bits) == p.challenge;
  } catch (const std::exception&) {
    return false;
  }
}

void to_json(json& j, const DisclosedAttribute& a) {
  j = json{{"raw", crypto::raw_to_json(a.raw)}, {"encoded", a.encoded}};
}

void from_json(const json& j, DisclosedAttribute& a) {
  a.raw = crypto::raw_from_json(j.at("raw"));
  a.encoded = j.at("encoded").get<Int>();
}

void to_json(json& j, const Presentation& p) {
  j = json{{"definition_id", p.definition_id},
           {"nonce", p.nonce},
           {"disclosed", disclosed_json(p.disclosed)},
           {"hidden", p.hidden},
           {"commitments", p.commitments},
           {"A_prime", p.A_prime},
           {"c", p.challenge},
           {"s_e", p.s_e},
           {"s_v", p.s_v},
           {"s_m", p.s_m},
           {"s_rho", p.s_rho}};
}

void from_json(const json& j, Presentation& p) {
  p.definition_id = j.at("definition_id").get<std::string>();
  p.nonce = j.at("nonce").get<std::string>();
  p.disclosed = j.at("disclosed").get<std::map<std::string, DisclosedAttribute>>();
  p.hidden = j.at("hidden").get<std::vector<std::string>>();
  p.commitments = j.at("commitments").get<std::map<std::string, Int>>();
  p.A_prime = j.at("A_prime").get<Int>();
  p.challenge = j.at("c").get<Int>();
  p.s_e = j.at("s_e").get<Int>();
  p.s_v = j.at("s_v").get<Int>();
  p.s_m = j.at("s_m").get<std::map<std::string, Int>>();
  p.s_rho = j.at("s_rho").get<std::map<std::string, Int>>();
}

}  // namespace fcguard::presentations
