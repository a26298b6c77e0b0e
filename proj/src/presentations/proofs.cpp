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

#include "fcguard/presentations/proofs.hpp"

#include "fcguard/crypto/transcript.hpp"
#include "fcguard/error.hpp"

namespace fcguard::presentations {

using crypto::bit_length;
using crypto::CommitmentKey;
using crypto::powm;

namespace {

bool fits(const Int& x, unsigned bits) { return x >= 0 && bit_length(x) <= bits; }

unsigned challenge_bits_for(const ledger::Registry& registry, const Presentation& p) {
  return credentials::fetch_definition(registry, p.definition_id).params().challenge_bits;
}

const crypto::ParameterProfile& params_for(const ledger::Registry& registry,
                                           const Presentation& p) {
  return crypto::profile(credentials::fetch_definition(registry, p.definition_id).profile);
}

const Int& commitment_of(const Presentation& p, std::string_view attr) {
  auto it = p.commitments.find(std::string(attr));
  enforce(it != p.commitments.end(), ErrorCode::kInvalidArgument,
          "presentation carries no commitment to '" + std::string(attr) + "'");
  return it->second;
}

bool in_group(const Int& x, const CommitmentKey& ck) { return x > 0 && x < ck.modulus; }

// ---- equality ----

Int equality_challenge(std::string_view nonce, const EqualityProof& proof, const Int& Ca,
                       const Int& Cb, const Int& T, unsigned bits) {
  crypto::Transcript t("fcguard/equality");
  t.absorb(nonce).absorb(proof.presentation_a).absorb(proof.attribute_a);
  t.absorb(proof.presentation_b).absorb(proof.attribute_b);
  t.absorb(Ca).absorb(Cb).absorb(T);
  return t.challenge(bits);
}

// ---- verifiable encryption ----

Int encryption_challenge(std::string_view nonce, const VerifiableEncryptionProof& proof,
                         const crypto::EncryptionPublicKey& pk, const Int& C,
                         const std::vector<Int>& commitments, unsigned bits) {
  crypto::Transcript t("fcguard/verifiable-encryption");
  t.absorb(nonce).absorb(proof.presentation).absorb(proof.attribute).absorb(proof.key_id);
  t.absorb_json(json(pk)).absorb(C).absorb_json(crypto::ciphertext_to_json(proof.ciphertext));
  for (const auto& T : commitments) t.absorb(T);
  return t.challenge(bits);
}

// (1 + N)^x mod N^2 for any integer x.
Int paillier_base_pow(const crypto::PaillierPublicKey& pk, const Int& x) {
  return crypto::mod(1 + crypto::mod(x, pk.N) * pk.N, pk.N2);
}

// ---- predicate ----

Int predicate_challenge(std::string_view nonce, const PredicateProof& proof, const Int& C,
                        const std::vector<Int>& t_bits, const Int& t_final, unsigned bits) {
  crypto::Transcript t("fcguard/predicate-le");
  t.absorb(nonce).absorb(proof.presentation).absorb(proof.attribute).absorb(proof.threshold);
  t.absorb(C);
  for (const auto& b : proof.bits) t.absorb(b.commitment);
  for (const auto& T : t_bits) t.absorb(T);
  t.absorb(t_final);
  return t.challenge(bits);
}

// g^threshold / (C * prod C_k^(2^k)); a power of h iff the bits add up.
Int predicate_residual(const CommitmentKey& ck, const Int& threshold, const Int& C,
                       const std::vector<PredicateBit>& bits) {
  Int denom = C;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    denom = denom * powm(bits[k].commitment, crypto::pow2(static_cast<unsigned>(k)), ck.modulus) %
            ck.modulus;
  }
  return powm(ck.g, threshold, ck.modulus) * crypto::inverse(denom, ck.modulus) % ck.modulus;
}

}  // namespace

EqualityProof prove_equality(const ledger::Registry& registry, std::string_view nonce,
                             const Presentation& a, std::string_view attr_a,
                             const CommitmentOpening& open_a, const Presentation& b,
                             std::string_view attr_b, const CommitmentOpening& open_b,
                             crypto::Rng& rng) {
  enforce(open_a.m == open_b.m, ErrorCode::kProofRefused,
          "refusing to prove equality of different values");
  auto ck = fetch_commitment_key(registry);
  const Int& Ca = commitment_of(a, attr_a);
  const Int& Cb = commitment_of(b, attr_b);
  enforce(crypto::open_verify(ck, Ca, open_a.m, open_a.rho) &&
              crypto::open_verify(ck, Cb, open_b.m, open_b.rho),
          ErrorCode::kInvalidArgument, "opening does not match the presentation commitment");
  EqualityProof proof{a.id(), std::string(attr_a), b.id(), std::string(attr_b), 0, 0};
  Int delta = crypto::mod(open_a.rho - open_b.rho, ck.order);
  Int r = rng.below(ck.order);
  Int T = powm(ck.h, r, ck.modulus);
  proof.challenge = equality_challenge(nonce, proof, Ca, Cb, T, challenge_bits_for(registry, a));
  proof.response = crypto::mod(r + proof.challenge * delta, ck.order);
  return proof;
}

bool verify_equality(const ledger::Registry& registry, const Presentation& a,
                     const Presentation& b, const EqualityProof& proof,
                     std::string_view expected_nonce) {
  try {
    if (proof.presentation_a != a.id() || proof.presentation_b != b.id()) return false;
    if (a.nonce != expected_nonce || b.nonce != expected_nonce) return false;
    auto ck = fetch_commitment_key(registry);
    const Int& Ca = commitment_of(a, proof.attribute_a);
    const Int& Cb = commitment_of(b, proof.attribute_b);
    unsigned bits = challenge_bits_for(registry, a);
    if (!fits(proof.challenge, bits) || proof.response < 0 || proof.response >= ck.order) {
      return false;
    }
    if (!in_group(Ca, ck) || !in_group(Cb, ck)) return false;
    Int D = Ca * crypto::inverse(Cb, ck.modulus) % ck.modulus;
    Int T = powm(ck.h, proof.response, ck.modulus) * powm(D, -proof.challenge, ck.modulus) %
            ck.modulus;
    return equality_challenge(expected_nonce, proof, Ca, Cb, T, bits) == proof.challenge;
  } catch (const std::exception&) {
    return false;
  }
}

VerifiableEncryptionProof prove_verifiable_encryption(const ledger::Registry& registry,
                                                      std::string_view nonce,
                                                      const Presentation& p,
                                                      std::string_view attr,
                                                      const CommitmentOpening& opening,
                                                      const crypto::EncryptionPublicKey& pk,
                                                      crypto::Rng& rng) {
  auto ck = fetch_commitment_key(registry);
  const auto& params = params_for(registry, p);
  const Int& C = commitment_of(p, attr);
  enforce(crypto::open_verify(ck, C, opening.m, opening.rho), ErrorCode::kInvalidArgument,
          "opening does not match the presentation commitment");

  VerifiableEncryptionProof proof;
  proof.presentation = p.id();
  proof.attribute = std::string(attr);
  proof.key_id = pk.key_id;

  Int r_m = rng.bits(params.response_bits(params.attribute_bits));
  Int r_rho = rng.below(ck.order);
  std::vector<Int> t{powm(ck.g, r_m, ck.modulus) * powm(ck.h, r_rho, ck.modulus) % ck.modulus};
  Int witness, nonce_r, r_r;

  if (const auto* eg = std::get_if<crypto::ElGamalPublicKey>(&pk.key)) {
    const auto& G = eg->group;
    witness = rng.below(G.Q);
    proof.ciphertext = crypto::elgamal_encrypt_with(*eg, opening.m, witness);
    r_r = rng.below(G.Q);
    t.push_back(powm(G.g, r_r, G.P));
    t.push_back(powm(G.g, r_m, G.P) * powm(eg->h, r_r, G.P) % G.P);
  } else {
    const auto& pp = std::get<crypto::PaillierPublicKey>(pk.key);
    witness = rng.unit_mod(pp.N);
    proof.ciphertext = crypto::paillier_encrypt_with(pp, opening.m, witness);
    r_r = rng.unit_mod(pp.N);
    t.push_back(paillier_base_pow(pp, r_m) * powm(r_r, pp.N, pp.N2) % pp.N2);
  }

  proof.challenge = encryption_challenge(nonce, proof, pk, C, t, params.challenge_bits);
  const Int& c = proof.challenge;
  proof.s_m = r_m + c * opening.m;
  proof.s_rho = crypto::mod(r_rho + c * opening.rho, ck.order);
  if (const auto* eg = std::get_if<crypto::ElGamalPublicKey>(&pk.key)) {
    proof.s_r = crypto::mod(r_r + c * witness, eg->group.Q);
  } else {
    const auto& pp = std::get<crypto::PaillierPublicKey>(pk.key);
    proof.s_r = r_r * powm(witness, c, pp.N) % pp.N;
  }
  return proof;
}

bool verify_verifiable_encryption(const ledger::Registry& registry, const Presentation& p,
                                  const VerifiableEncryptionProof& proof,
                                  const crypto::EncryptionPublicKey& pk,
                                  std::string_view expected_nonce) {
  try {
    if (proof.presentation != p.id() || proof.key_id != pk.key_id) return false;
    if (p.nonce != expected_nonce) return false;
    if (crypto::scheme_of(proof.ciphertext) != pk.scheme()) return false;
    auto ck = fetch_commitment_key(registry);
    const auto& params = params_for(registry, p);
    const Int& C = commitment_of(p, proof.attribute);
    const Int& c = proof.challenge;
    if (!fits(c, params.challenge_bits)) return false;
    if (!fits(proof.s_m, params.response_bits(params.attribute_bits) + 1)) return false;
    if (proof.s_rho < 0 || proof.s_rho >= ck.order || !in_group(C, ck)) return false;

    std::vector<Int> t{powm(C, -c, ck.modulus) * powm(ck.g, proof.s_m, ck.modulus) % ck.modulus *
                       powm(ck.h, proof.s_rho, ck.modulus) % ck.modulus};
    if (const auto* eg = std::get_if<crypto::ElGamalPublicKey>(&pk.key)) {
      const auto& G = eg->group;
      const auto& ct = std::get<crypto::ElGamalCiphertext>(proof.ciphertext);
      if (ct.c1 <= 0 || ct.c1 >= G.P || ct.c2 <= 0 || ct.c2 >= G.P) return false;
      if (proof.s_r < 0 || proof.s_r >= G.Q) return false;
      t.push_back(powm(ct.c1, -c, G.P) * powm(G.g, proof.s_r, G.P) % G.P);
      t.push_back(powm(ct.c2, -c, G.P) * powm(G.g, proof.s_m, G.P) % G.P *
                  powm(eg->h, proof.s_r, G.P) % G.P);
    } else {
      const auto& pp = std::get<crypto::PaillierPublicKey>(pk.key);
      const auto& ct = std::get<crypto::PaillierCiphertext>(proof.ciphertext);
      if (ct.c <= 0 || ct.c >= pp.N2 || !crypto::coprime(ct.c, pp.N)) return false;
      if (proof.s_r <= 0 || proof.s_r >= pp.N || !crypto::coprime(proof.s_r, pp.N)) return false;
      t.push_back(paillier_base_pow(pp, proof.s_m) * powm(proof.s_r, pp.N, pp.N2) % pp.N2 *
                  powm(ct.c, -c, pp.N2) % pp.N2);
    }
    return encryption_challenge(expected_nonce, proof, pk, C, t, params.challenge_bits) == c;
  } catch (const std::exception&) {
    return false;
  }
}

PredicateProof prove_predicate_ge(const ledger::Registry& registry, std::string_view nonce,
                                  const Presentation& p, std::string_view attr,
                                  const CommitmentOpening& opening, const Int& threshold,
                                  crypto::Rng& rng) {
  Int delta = threshold - opening.m;
  enforce(delta >= 0 && delta < crypto::pow2(kPredicateBits), ErrorCode::kProofRefused,
          "refusing to prove a predicate the attribute does not satisfy");
  auto ck = fetch_commitment_key(registry);
  unsigned bits = challenge_bits_for(registry, p);
  const Int challenge_mod = crypto::pow2(bits);
  const Int& C = commitment_of(p, attr);
  enforce(crypto::open_verify(ck, C, opening.m, opening.rho), ErrorCode::kInvalidArgument,
          "opening does not match the presentation commitment");
  const Int& P = ck.modulus;

  PredicateProof proof;
  proof.presentation = p.id();
  proof.attribute = std::string(attr);
  proof.threshold = threshold;

  // Per bit: real branch b, simulated branch 1-b.
  std::vector<Int> rho(kPredicateBits), r(kPredicateBits), t_bits;
  std::vector<int> bit(kPredicateBits);
  Int g_inv = crypto::inverse(ck.g, P);
  for (unsigned k = 0; k < kPredicateBits; ++k) {
    bit[k] = mpz_tstbit(delta.get_mpz_t(), k);
    rho[k] = rng.below(ck.order);
    PredicateBit pb;
    pb.commitment = crypto::commit_with(ck, bit[k], rho[k]).value;
    r[k] = rng.below(ck.order);
    Int sim_c = rng.bits(bits);
    Int sim_s = rng.below(ck.order);
    // Y_0 = C_k, Y_1 = C_k / g.
    Int y_other = bit[k] ? pb.commitment : pb.commitment * g_inv % P;
    Int t_real = powm(ck.h, r[k], P);
    Int t_sim = powm(ck.h, sim_s, P) * powm(y_other, -sim_c, P) % P;
    if (bit[k]) {
      pb.c0 = sim_c;
      pb.s0 = sim_s;
      t_bits.push_back(t_sim);
      t_bits.push_back(t_real);
    } else {
      pb.c1 = sim_c;
      pb.s1 = sim_s;
      t_bits.push_back(t_real);
      t_bits.push_back(t_sim);
    }
    proof.bits.push_back(pb);
  }
  // Residual g^T / (C prod C_k^(2^k)) = h^w.
  Int w = -opening.rho;
  for (unsigned k = 0; k < kPredicateBits; ++k) w -= crypto::pow2(k) * rho[k];
  w = crypto::mod(w, ck.order);
  Int r_final = rng.below(ck.order);
  Int t_final = powm(ck.h, r_final, P);

  proof.challenge = predicate_challenge(nonce, proof, C, t_bits, t_final, bits);
  for (unsigned k = 0; k < kPredicateBits; ++k) {
    auto& pb = proof.bits[k];
    if (bit[k]) {
      pb.c1 = crypto::mod(proof.challenge - pb.c0, challenge_mod);
      pb.s1 = crypto::mod(r[k] + pb.c1 * rho[k], ck.order);
    } else {
      pb.c0 = crypto::mod(proof.challenge - pb.c1, challenge_mod);
      pb.s0 = crypto::mod(r[k] + pb.c0 * rho[k], ck.order);
    }
  }
  proof.response = crypto::mod(r_final + proof.challenge * w, ck.order);
  return proof;
}

bool verify_predicate(const ledger::Registry& registry, const Presentation& p,
                      const PredicateProof& proof, const Int& threshold,
                      std::string_view expected_nonce) {
  try {
    if (proof.presentation != p.id() || proof.threshold != threshold) return false;
    if (p.nonce != expected_nonce) return false;
    if (proof.bits.size() != kPredicateBits) return false;
    auto ck = fetch_commitment_key(registry);
    unsigned bits = challenge_bits_for(registry, p);
    const Int challenge_mod = crypto::pow2(bits);
    const Int& C = commitment_of(p, proof.attribute);
    const Int& P = ck.modulus;
    if (!in_group(C, ck) || !fits(proof.challenge, bits)) return false;
    if (proof.response < 0 || proof.response >= ck.order) return false;

    Int g_inv = crypto::inverse(ck.g, P);
    std::vector<Int> t_bits;
    for (const auto& pb : proof.bits) {
      if (!in_group(pb.commitment, ck)) return false;
      for (const Int* s : {&pb.s0, &pb.s1}) {
        if (*s < 0 || *s >= ck.order) return false;
      }
      if (!fits(pb.c0, bits) || !fits(pb.c1, bits)) return false;
      if (crypto::mod(pb.c0 + pb.c1, challenge_mod) != proof.challenge) return false;
      Int y1 = pb.commitment * g_inv % P;
      t_bits.push_back(powm(ck.h, pb.s0, P) * powm(pb.commitment, -pb.c0, P) % P);
      t_bits.push_back(powm(ck.h, pb.s1, P) * powm(y1, -pb.c1, P) % P);
    }
    Int residual = predicate_residual(ck, threshold, C, proof.bits);
    Int t_final = powm(ck.h, proof.response, P) * powm(residual, -proof.challenge, P) % P;
    return predicate_challenge(expected_nonce, proof, C, t_bits, t_final, bits) ==
           proof.challenge;
  } catch (const std::exception&) {
    return false;
  }
}

Int age_threshold(std::int64_t today_yyyymmdd, unsigned years) {
  return Int(static_cast<long>(today_yyyymmdd)) - Int(static_cast<long>(years)) * 10000;
}

void to_json(json& j, const EqualityProof& p) {
  j = json{{"presentation_a", p.presentation_a}, {"attribute_a", p.attribute_a},
           {"presentation_b", p.presentation_b}, {"attribute_b", p.attribute_b},
           {"c", p.challenge},                   {"s", p.response}};
}

void from_json(const json& j, EqualityProof& p) {
  p.presentation_a = j.at("presentation_a").get<std::string>();
  p.attribute_a = j.at("attribute_a").get<std::string>();
  p.presentation_b = j.at("presentation_b").get<std::string>();
  p.attribute_b = j.at("attribute_b").get<std::string>();
  p.challenge = j.at("c").get<Int>();
  p.response = j.at("s").get<Int>();
}

void to_json(json& j, const VerifiableEncryptionProof& p) {
  j = json{{"presentation", p.presentation},
           {"attribute", p.attribute},
           {"key_id", p.key_id},
           {"ciphertext", crypto::ciphertext_to_json(p.ciphertext)},
           {"c", p.challenge},
           {"s_m", p.s_m},
           {"s_rho", p.s_rho},
           {"s_r", p.s_r}};
}

void from_json(const json& j, VerifiableEncryptionProof& p) {
  p.presentation = j.at("presentation").get<std::string>();
  p.attribute = j.at("attribute").get<std::string>();
  p.key_id = j.at("key_id").get<std::string>();
  p.ciphertext = crypto::ciphertext_from_json(j.at("ciphertext"));
  p.challenge = j.at("c").get<Int>();
  p.s_m = j.at("s_m").get<Int>();
  p.s_rho = j.at("s_rho").get<Int>();
  p.s_r = j.at("s_r").get<Int>();
}

void to_json(json& j, const PredicateBit& b) {
  j = json{{"C", b.commitment}, {"c0", b.c0}, {"c1", b.c1}, {"s0", b.s0}, {"s1", b.s1}};
}

void from_json(const json& j, PredicateBit& b) {
  b.commitment = j.at("C").get<Int>();
  b.c0 = j.at("c0").get<Int>();
  b.c1 = j.at("c1").get<Int>();
  b.s0 = j.at("s0").get<Int>();
  b.s1 = j.at("s1").get<Int>();
}

void to_json(json& j, const PredicateProof& p) {
  j = json{{"presentation", p.presentation}, {"attribute", p.attribute},
           {"threshold", p.threshold},       {"bits", p.bits},
           {"c", p.challenge},               {"s", p.response}};
}

void from_json(const json& j, PredicateProof& p) {
  p.presentation = j.at("presentation").get<std::string>();
  p.attribute = j.at("attribute").get<std::string>();
  p.threshold = j.at("threshold").get<Int>();
  p.bits = j.at("bits").get<std::vector<PredicateBit>>();
  p.challenge = j.at("c").get<Int>();
  p.response = j.at("s").get<Int>();
}

}  // namespace fcguard::presentations
