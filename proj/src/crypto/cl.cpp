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

#include "fcguard/crypto/cl.hpp"

#include "fcguard/crypto/primes.hpp"
#include "fcguard/crypto/transcript.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {

namespace {

// S generates QR_n iff its order is exactly p'q'.
bool generates_qr(const Int& S, const Int& n, const Int& p_prime, const Int& q_prime) {
  return powm(S, p_prime, n) != 1 && powm(S, q_prime, n) != 1;
}

bool is_qr(const Int& x, const Int& p, const Int& q) {
  return mpz_legendre(x.get_mpz_t(), p.get_mpz_t()) == 1 &&
         mpz_legendre(x.get_mpz_t(), q.get_mpz_t()) == 1;
}

void check_slots(const ClPublicKey& pub, std::size_t count) {
  enforce(count <= pub.R.size(), ErrorCode::kOutOfRange,
          "more attribute slots than the key supports");
}

void check_attribute(const Int& m) {
  enforce(m >= 0 && bit_length(m) <= profile(Profile::kToy).attribute_bits,
          ErrorCode::kOutOfRange, "attribute outside the signable range");
}

}  // namespace

ClIssuerKeyPair cl_keygen(std::size_t attribute_count, const ParameterProfile& params, Rng& rng,
                          std::size_t max_prime_windows) {
  enforce(attribute_count >= 1, ErrorCode::kInvalidArgument,
          "cl_keygen: attribute_count must be positive");
  Int p_prime = random_safe_prime_cofactor(params.cl_prime_bits, rng, max_prime_windows);
  Int q_prime;
  do {
    q_prime = random_safe_prime_cofactor(params.cl_prime_bits, rng, max_prime_windows);
  } while (q_prime == p_prime);

  ClIssuerKeyPair keys;
  keys.profile = params.id;
  auto& priv = keys.priv;
  auto& pub = keys.pub;
  priv.p_prime = p_prime;
  priv.q_prime = q_prime;
  priv.p = 2 * p_prime + 1;
  priv.q = 2 * q_prime + 1;
  pub.n = priv.p * priv.q;

  const Int order = priv.group_order();
  do {
    Int x = rng.unit_mod(pub.n);
    pub.S = x * x % pub.n;
  } while (!generates_qr(pub.S, pub.n, p_prime, q_prime));

  priv.x_Z = rng.between(2, order - 1);
  pub.Z = powm(pub.S, priv.x_Z, pub.n);
  for (std::size_t i = 0; i < attribute_count; ++i) {
    priv.x_R.push_back(rng.between(2, order - 1));
    pub.R.push_back(powm(pub.S, priv.x_R.back(), pub.n));
  }
  return keys;
}

ClIssuerKeyPair cl_key_from_parts(const Int& p_prime, const Int& q_prime, const Int& S,
                                  const Int& x_Z, std::vector<Int> x_R, Profile profile) {
  ClIssuerKeyPair keys;
  keys.profile = profile;
  keys.priv.p_prime = p_prime;
  keys.priv.q_prime = q_prime;
  keys.priv.p = 2 * p_prime + 1;
  keys.priv.q = 2 * q_prime + 1;
  keys.priv.x_Z = x_Z;
  keys.priv.x_R = std::move(x_R);
  keys.pub.n = keys.priv.p * keys.priv.q;
  keys.pub.S = S;
  keys.pub.Z = powm(S, x_Z, keys.pub.n);
  for (const auto& x : keys.priv.x_R) keys.pub.R.push_back(powm(S, x, keys.pub.n));
  enforce(cl_key_invariants_hold(keys), ErrorCode::kInvalidArgument,
          "cl_key_from_parts: parts violate the key invariants");
  return keys;
}

bool cl_key_invariants_hold(const ClIssuerKeyPair& keys) {
  const auto& priv = keys.priv;
  const auto& pub = keys.pub;
  if (!is_probable_prime(priv.p_prime) || !is_probable_prime(priv.q_prime)) return false;
  if (priv.p != 2 * priv.p_prime + 1 || priv.q != 2 * priv.q_prime + 1) return false;
  if (!is_probable_prime(priv.p) || !is_probable_prime(priv.q)) return false;
  if (pub.n != priv.p * priv.q) return false;
  if (pub.S <= 1 || pub.S >= pub.n || !is_qr(pub.S, priv.p, priv.q)) return false;
  const Int order = priv.group_order();
  auto in_range = [&](const Int& x) { return x >= 2 && x <= order - 1; };
  if (!in_range(priv.x_Z) || pub.Z != powm(pub.S, priv.x_Z, pub.n)) return false;
  if (priv.x_R.size() != pub.R.size() || pub.R.empty()) return false;
  for (std::size_t i = 0; i < pub.R.size(); ++i) {
    if (!in_range(priv.x_R[i]) || pub.R[i] != powm(pub.S, priv.x_R[i], pub.n)) return false;
  }
  return true;
}

Int cl_signed_quotient(const ClPublicKey& pub, std::span<const Int> slots, const Int& v,
                       const std::optional<Int>& hidden_commitment) {
  check_slots(pub, slots.size());
  Int denom = powm(pub.S, v, pub.n);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] != 0) denom = denom * powm(pub.R[i], slots[i], pub.n) % pub.n;
  }
  if (hidden_commitment) denom = denom * *hidden_commitment % pub.n;
  return pub.Z * inverse(denom, pub.n) % pub.n;
}

ClSignature cl_sign(const ClIssuerKeyPair& keys, std::span<const std::optional<Int>> slots,
                    const std::optional<Int>& hidden_commitment, const ParameterProfile& params,
                    Rng& rng) {
  const Int order = keys.priv.group_order();
  Int e;
  do {
    e = random_prime_in(pow2(params.e_bits - 1), pow2(params.e_range_bits - 1), rng);
  } while (!coprime(e, order));
  Int v = rng.bits(params.v_bits() - 1) | pow2(params.v_bits() - 1);
  return cl_sign_with(keys, slots, hidden_commitment, e, v);
}

ClSignature cl_sign_with(const ClIssuerKeyPair& keys, std::span<const std::optional<Int>> slots,
                         const std::optional<Int>& hidden_commitment, const Int& e,
                         const Int& v) {
  check_slots(keys.pub, slots.size());
  std::vector<Int> known;
  known.reserve(slots.size());
  for (const auto& slot : slots) {
    if (slot) {
      check_attribute(*slot);
      known.push_back(*slot);
    } else {
      enforce(hidden_commitment.has_value(), ErrorCode::kInvalidArgument,
              "cl_sign: empty slot without a hidden commitment");
      known.push_back(0);
    }
  }
  if (hidden_commitment) {
    enforce(*hidden_commitment > 0 && *hidden_commitment < keys.pub.n &&
                coprime(*hidden_commitment, keys.pub.n),
            ErrorCode::kInvalidArgument, "cl_sign: malformed hidden commitment");
  }
  const Int order = keys.priv.group_order();
  enforce(e > 1 && coprime(e, order), ErrorCode::kInvalidArgument,
          "cl_sign: e must be invertible modulo p'q'");
  Int quotient = cl_signed_quotient(keys.pub, known, v, hidden_commitment);
  Int d = inverse(e, order);
  return ClSignature{powm(quotient, d, keys.pub.n), e, v};
}

bool cl_verify(const ClPublicKey& pub, std::span<const Int> slots, const ClSignature& sig) {
  try {
    if (slots.size() > pub.R.size()) return false;
    if (sig.A <= 0 || sig.A >= pub.n || !coprime(sig.A, pub.n)) return false;
    if (sig.e <= 1) return false;
    Int lhs = powm(sig.A, sig.e, pub.n) * powm(pub.S, sig.v, pub.n) % pub.n;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      lhs = lhs * powm(pub.R[i], slots[i], pub.n) % pub.n;
    }
    return lhs == pub.Z;
  } catch (const Error&) {
    return false;
  }
}

namespace {

Int signature_proof_challenge(const ClPublicKey& pub, const Int& quotient, const Int& A,
                              const Int& commitment, std::string_view nonce, unsigned bits) {
  Transcript t("fcguard/cl-signature-correctness");
  t.absorb(pub.n).absorb(quotient).absorb(A).absorb(commitment).absorb(nonce);
  return t.challenge(bits);
}

}  // namespace

ClSignatureProof cl_prove_signature(const ClIssuerKeyPair& keys, const Int& quotient,
                                    const ClSignature& sig, std::string_view nonce,
                                    const ParameterProfile& params, Rng& rng) {
  const Int order = keys.priv.group_order();
  Int r = rng.below(order);
  Int commitment = powm(quotient, r, keys.pub.n);
  Int c = signature_proof_challenge(keys.pub, quotient, sig.A, commitment, nonce,
                                    params.challenge_bits);
  Int d = inverse(sig.e, order);
  return ClSignatureProof{c, mod(r - c * d, order)};
}

bool cl_verify_signature_proof(const ClPublicKey& pub, const Int& quotient, const Int& A,
                               const ClSignatureProof& proof, std::string_view nonce,
                               const ParameterProfile& params) {
  try {
    if (A <= 0 || A >= pub.n || proof.response < 0) return false;
    Int commitment = powm(A, proof.challenge, pub.n) * powm(quotient, proof.response, pub.n) % pub.n;
    return signature_proof_challenge(pub, quotient, A, commitment, nonce, params.challenge_bits) ==
           proof.challenge;
  } catch (const Error&) {
    return false;
  }
}

void to_json(json& j, const ClPublicKey& k) {
  j = json{{"n", k.n}, {"S", k.S}, {"Z", k.Z}, {"R", k.R}};
}

void from_json(const json& j, ClPublicKey& k) {
  k.n = j.at("n").get<Int>();
  k.S = j.at("S").get<Int>();
  k.Z = j.at("Z").get<Int>();
  k.R = j.at("R").get<std::vector<Int>>();
}

void to_json(json& j, const ClIssuerKeyPair& k) {
  j = json{{"profile", profile(k.profile).name()},
           {"public", k.pub},
           {"private",
            {{"p", k.priv.p},
             {"q", k.priv.q},
             {"p_prime", k.priv.p_prime},
             {"q_prime", k.priv.q_prime},
             {"x_Z", k.priv.x_Z},
             {"x_R", k.priv.x_R}}}};
}

void from_json(const json& j, ClIssuerKeyPair& k) {
  k.profile = parse_profile(j.at("profile").get<std::string>());
  k.pub = j.at("public").get<ClPublicKey>();
  const auto& p = j.at("private");
  k.priv.p = p.at("p").get<Int>();
  k.priv.q = p.at("q").get<Int>();
  k.priv.p_prime = p.at("p_prime").get<Int>();
  k.priv.q_prime = p.at("q_prime").get<Int>();
  k.priv.x_Z = p.at("x_Z").get<Int>();
  k.priv.x_R = p.at("x_R").get<std::vector<Int>>();
}

void to_json(json& j, const ClSignature& s) { j = json{{"A", s.A}, {"e", s.e}, {"v", s.v}}; }

void from_json(const json& j, ClSignature& s) {
  s.A = j.at("A").get<Int>();
  s.e = j.at("e").get<Int>();
  s.v = j.at("v").get<Int>();
}

void to_json(json& j, const ClSignatureProof& p) {
  j = json{{"c", p.challenge}, {"s_e", p.response}};
}

void from_json(const json& j, ClSignatureProof& p) {
  p.challenge = j.at("c").get<Int>();
  p.response = j.at("s_e").get<Int>();
}

}  // namespace fcguard::crypto
