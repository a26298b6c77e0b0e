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

#include <gtest/gtest.h>

#include <array>
#include <set>
#include <string>
#include <vector>

#include "fcguard/crypto/cl.hpp"
#include "fcguard/crypto/commitment.hpp"
#include "fcguard/crypto/elgamal.hpp"
#include "fcguard/crypto/encoding.hpp"
#include "fcguard/crypto/encryption.hpp"
#include "fcguard/crypto/paillier.hpp"
#include "fcguard/crypto/primes.hpp"
#include "fcguard/crypto/transcript.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {
namespace {

// Repeated multiplication, deliberately not using powm.
std::uint64_t schoolbook_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t acc = 1 % mod;
  for (std::uint64_t i = 0; i < exp; ++i) acc = acc * (base % mod) % mod;
  return acc;
}

std::uint64_t schoolbook_inverse(std::uint64_t a, std::uint64_t mod) {
  for (std::uint64_t x = 1; x < mod; ++x) {
    if (a * x % mod == 1) return x;
  }
  return 0;
}

ClIssuerKeyPair tiny_cl_key() { return cl_key_from_parts(5, 11, 4, 7, {3, 5, 9, 13}); }

TEST(ClKey, TinyKeyMatchesSchoolbook) {
  auto keys = tiny_cl_key();
  EXPECT_EQ(keys.pub.n, 253);
  EXPECT_EQ(keys.priv.p, 11);
  EXPECT_EQ(keys.priv.q, 23);
  EXPECT_EQ(keys.pub.Z, 192);
  EXPECT_EQ(keys.pub.Z, schoolbook_pow(4, 7, 253));
}

TEST(ClKey, RejectsBrokenParts) {
  EXPECT_THROW(cl_key_from_parts(6, 11, 4, 7, {3}), Error);
  EXPECT_THROW(cl_key_from_parts(5, 11, 4, 1, {3}), Error);
  // 2 is a non-residue mod 11.
  EXPECT_THROW(cl_key_from_parts(5, 11, 2, 7, {3}), Error);
}

TEST(ClKey, ToyKeygenDeterministicAndValid) {
  const auto& params = profile(Profile::kToy);
  Rng a(7), b(7);
  auto k1 = cl_keygen(3, params, a);
  auto k2 = cl_keygen(3, params, b);
  EXPECT_EQ(k1.pub, k2.pub);
  EXPECT_TRUE(cl_key_invariants_hold(k1));
  EXPECT_EQ(bit_length(k1.priv.p_prime), params.cl_prime_bits);
  EXPECT_EQ(bit_length(k1.priv.q_prime), params.cl_prime_bits);
  EXPECT_EQ(k1.pub.R.size(), 3u);
}

TEST(ClKey, JsonRoundTrip) {
  Rng rng(3);
  auto keys = cl_keygen(2, profile(Profile::kToy), rng);
  json j = keys;
  auto back = j.get<ClIssuerKeyPair>();
  EXPECT_EQ(back.pub, keys.pub);
  EXPECT_EQ(back.priv.x_R, keys.priv.x_R);
  EXPECT_TRUE(cl_key_invariants_hold(back));
}

TEST(ClSign, TinyInstanceTermByTerm) {
  auto keys = tiny_cl_key();
  std::vector<std::optional<Int>> slots{Int(2), Int(6), Int(0), Int(10)};
  auto sig = cl_sign_with(keys, slots, std::nullopt, 3, 17);
  const std::uint64_t n = 253;
  std::uint64_t A = sig.A.get_ui();
  std::uint64_t lhs = schoolbook_pow(A, 3, n);
  std::uint64_t denom = schoolbook_pow(4, 17, n);
  const std::array<std::uint64_t, 4> m{2, 6, 0, 10};
  for (std::size_t i = 0; i < m.size(); ++i) {
    denom = denom * schoolbook_pow(keys.pub.R[i].get_ui(), m[i], n) % n;
  }
  std::uint64_t rhs = 192 * schoolbook_inverse(denom, n) % n;
  EXPECT_EQ(lhs, rhs);
  std::vector<Int> plain{2, 6, 0, 10};
  EXPECT_TRUE(cl_verify(keys.pub, plain, sig));
}

class ClRoundTrip : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Rng rng(11);
    keys_ = new ClIssuerKeyPair(cl_keygen(4, profile(Profile::kToy), rng));
  }
  static void TearDownTestSuite() { delete keys_; }
  static ClIssuerKeyPair* keys_;
};
ClIssuerKeyPair* ClRoundTrip::keys_ = nullptr;

TEST_F(ClRoundTrip, HundredVectorsVerifyAndResistMutation) {
  const auto& params = profile(Profile::kToy);
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Int> m;
    std::vector<std::optional<Int>> slots;
    for (int i = 0; i < 4; ++i) {
      m.push_back(rng.bits(params.attribute_bits));
      slots.emplace_back(m.back());
    }
    auto sig = cl_sign(*keys_, slots, std::nullopt, params, rng);
    ASSERT_TRUE(cl_verify(keys_->pub, m, sig));
    auto bad = sig;
    bad.A += 1;
    EXPECT_FALSE(cl_verify(keys_->pub, m, bad));
    bad = sig;
    bad.e += 2;
    EXPECT_FALSE(cl_verify(keys_->pub, m, bad));
    bad = sig;
    bad.v += 1;
    EXPECT_FALSE(cl_verify(keys_->pub, m, bad));
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto mm = m;
      mm[i] += 1;
      EXPECT_FALSE(cl_verify(keys_->pub, mm, sig));
    }
  }
}

TEST_F(ClRoundTrip, HiddenCommitmentAndIssuerProof) {
  const auto& params = profile(Profile::kToy);
  Rng rng(13);
  Int secret = rng.bits(params.attribute_bits);
  Int v_prime = rng.bits(params.modulus_bits() + params.stat_bits);
  Int U = powm(keys_->pub.R[0], secret, keys_->pub.n) * powm(keys_->pub.S, v_prime, keys_->pub.n) %
          keys_->pub.n;
  std::vector<std::optional<Int>> slots{std::nullopt, Int(42), Int(7)};
  auto sig = cl_sign(*keys_, slots, U, params, rng);
  std::vector<Int> plain{0, 42, 7};
  Int Q = cl_signed_quotient(keys_->pub, plain, sig.v, U);
  auto proof = cl_prove_signature(*keys_, Q, sig, "nonce-1", params, rng);
  EXPECT_TRUE(cl_verify_signature_proof(keys_->pub, Q, sig.A, proof, "nonce-1", params));
  EXPECT_FALSE(cl_verify_signature_proof(keys_->pub, Q, sig.A, proof, "nonce-2", params));
  auto bad = proof;
  bad.response += 1;
  EXPECT_FALSE(cl_verify_signature_proof(keys_->pub, Q, sig.A, bad, "nonce-1", params));

  ClSignature full{sig.A, sig.e, sig.v + v_prime};
  std::vector<Int> with_secret{secret, 42, 7};
  EXPECT_TRUE(cl_verify(keys_->pub, with_secret, full));
  with_secret[0] += 1;
  EXPECT_FALSE(cl_verify(keys_->pub, with_secret, full));
}

TEST_F(ClRoundTrip, RejectsTooManySlotsAndOversizedAttributes) {
  const auto& params = profile(Profile::kToy);
  Rng rng(14);
  std::vector<std::optional<Int>> slots(5, Int(1));
  EXPECT_THROW(cl_sign(*keys_, slots, std::nullopt, params, rng), Error);
  std::vector<std::optional<Int>> big{pow2(300)};
  EXPECT_THROW(cl_sign(*keys_, big, std::nullopt, params, rng), Error);
}

TEST(Encoding, IntegersPassThroughStringsHash) {
  EXPECT_EQ(encode_attribute(Int(123456789)), 123456789);
  EXPECT_EQ(encode_attribute(std::string_view("Bank of A")),
            encode_attribute(std::string_view("Bank of A")));
  EXPECT_THROW(encode_attribute(pow2(kAttributeEncodingBits)), Error);
  EXPECT_THROW(encode_attribute(Int(-1)), Error);
  std::set<std::string> seen;
  const char* corpus[] = {"a", "b", "Alice", "alice", "Bank of A", "Bank of B", "", " "};
  for (const char* s : corpus) {
    Int e = encode_attribute(std::string_view(s));
    EXPECT_LT(bit_length(e), kAttributeEncodingBits + 1);
    EXPECT_TRUE(seen.insert(e.get_str(16)).second) << s;
  }
}

TEST(ElGamal, ToyWorkedExample) {
  GroupParams g{23, 11, 4};
  ASSERT_TRUE(group_valid(g));
  auto keys = elgamal_key_from_secret(g, 3);
  EXPECT_EQ(keys.pub.h, 18);
  auto ct = elgamal_encrypt_with(keys.pub, 2, 5);
  EXPECT_EQ(ct.c1, 12);
  EXPECT_EQ(ct.c2, 2);
  // c2 / c1^x recovers g^m = 16.
  std::uint64_t gm = 2 * schoolbook_inverse(schoolbook_pow(12, 3, 23), 23) % 23;
  EXPECT_EQ(gm, 16u);
  EXPECT_EQ(elgamal_decrypt(keys.priv, ct), 2);
  EXPECT_EQ(elgamal_decrypt(keys.priv, elgamal_encrypt_with(keys.pub, 0, 7)), 0);
}

class ElGamalToy : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Rng rng(21);
    keys_ = new ElGamalKeyPair(elgamal_keygen(generate_group(profile(Profile::kToy).group_bits, rng), rng));
    dec_ = new ElGamalDecryptor(keys_->priv);
  }
  static void TearDownTestSuite() {
    delete dec_;
    delete keys_;
  }
  static ElGamalKeyPair* keys_;
  static ElGamalDecryptor* dec_;
};
ElGamalKeyPair* ElGamalToy::keys_ = nullptr;
ElGamalDecryptor* ElGamalToy::dec_ = nullptr;

TEST_F(ElGamalToy, GroupIsValid) {
  EXPECT_TRUE(group_valid(keys_->pub.group));
  EXPECT_EQ(bit_length(keys_->pub.group.P), profile(Profile::kToy).group_bits);
}

TEST_F(ElGamalToy, HundredRoundTrips) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    Int m = i == 0 ? Int(0) : i == 1 ? pow2(kElGamalPlaintextBits) - 1 : rng.bits(kElGamalPlaintextBits);
    EXPECT_EQ(dec_->decrypt(elgamal_encrypt(keys_->pub, m, rng)), m);
  }
}

TEST_F(ElGamalToy, ProbabilisticAndBounded) {
  Rng rng(23);
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) {
    auto ct = elgamal_encrypt(keys_->pub, 123456789, rng);
    EXPECT_TRUE(seen.insert(canonical_dump(json(ct))).second);
  }
  EXPECT_THROW(elgamal_encrypt(keys_->pub, pow2(kElGamalPlaintextBits), rng), Error);
  // g^(2^30) encrypted by hand lies outside the discrete-log window.
  const auto& G = keys_->pub.group;
  ElGamalCiphertext out{1, powm(G.g, pow2(kElGamalPlaintextBits), G.P)};
  EXPECT_THROW(dec_->decrypt(out), Error);
}

TEST(ElGamal, Rfc3526GroupIsSafePrime) {
  auto g = rfc3526_group_2048();
  EXPECT_EQ(bit_length(g.P), 2048u);
  EXPECT_TRUE(group_valid(g));
}

TEST(Paillier, ToyWorkedExample) {
  auto keys = paillier_key_from_primes(3, 5);
  EXPECT_EQ(keys.pub.N, 15);
  EXPECT_EQ(keys.pub.g(), 16);
  EXPECT_EQ(keys.priv.lambda, 4);
  auto ct = paillier_encrypt_with(keys.pub, 7, 2);
  EXPECT_EQ(ct.c, 83);
  EXPECT_EQ(schoolbook_pow(83, 4, 225), 196u);
  EXPECT_EQ((196 - 1) / 15, 13);
  EXPECT_EQ(keys.priv.mu, schoolbook_inverse((schoolbook_pow(16, 4, 225) - 1) / 15, 15));
  EXPECT_EQ(paillier_decrypt(keys, ct), 7);
  EXPECT_EQ(paillier_decrypt(keys, paillier_encrypt_with(keys.pub, 0, 4)), 0);
  EXPECT_THROW(paillier_encrypt_with(keys.pub, 15, 2), Error);
  EXPECT_THROW(paillier_encrypt_with(keys.pub, 7, 3), Error);
}

TEST(Paillier, HundredRoundTripsAndFreshness) {
  Rng rng(31);
  auto keys = paillier_keygen(profile(Profile::kToy).group_bits, rng);
  EXPECT_EQ(bit_length(keys.pub.N), profile(Profile::kToy).group_bits);
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) {
    Int m = rng.below(keys.pub.N);
    EXPECT_EQ(paillier_decrypt(keys, paillier_encrypt(keys.pub, m, rng)), m);
    EXPECT_TRUE(seen.insert(paillier_encrypt(keys.pub, 7, rng).c.get_str(16)).second);
  }
  Int account("12345678901234567");
  EXPECT_EQ(paillier_decrypt(keys, paillier_encrypt(keys.pub, account, rng)), account);
}

TEST(Encryption, JsonCarriesScheme) {
  Rng rng(41);
  auto keys = paillier_keygen(128, rng);
  Ciphertext ct = paillier_encrypt(keys.pub, 5, rng);
  json j = ciphertext_to_json(ct);
  EXPECT_EQ(j.at("scheme"), "paillier");
  auto back = ciphertext_from_json(j);
  EXPECT_EQ(std::get<PaillierCiphertext>(back), std::get<PaillierCiphertext>(ct));
  j["scheme"] = "rot13";
  EXPECT_THROW(ciphertext_from_json(j), Error);

  EncryptionPublicKey pk{"bank", keys.pub};
  auto pk_back = json(pk).get<EncryptionPublicKey>();
  EXPECT_EQ(pk_back.scheme(), EncryptionScheme::kPaillier);
  EXPECT_EQ(std::get<PaillierPublicKey>(pk_back.key), keys.pub);
}

TEST(Commitment, TinyRsaBasesMatchSchoolbook) {
  auto keys = tiny_cl_key();
  auto key = rsa_commitment_key(keys.pub, 1, 8);
  auto c = commit_with(key, 6, 9);
  std::uint64_t expect = schoolbook_pow(keys.pub.R[1].get_ui(), 6, 253) * schoolbook_pow(4, 9, 253) % 253;
  EXPECT_EQ(c.value, expect);
  EXPECT_TRUE(open_verify(key, c.value, 6, 9));
  EXPECT_FALSE(open_verify(key, c.value, 7, 9));
}

TEST(Commitment, GroupKeyOpenAndTamper) {
  Rng rng(51);
  auto group = generate_group(profile(Profile::kToy).group_bits, rng);
  auto key = group_commitment_key(group);
  EXPECT_EQ(powm(key.h, group.Q, group.P), 1);
  EXPECT_EQ(key, group_commitment_key(group));
  for (int i = 0; i < 20; ++i) {
    Int m = rng.bits(252);
    auto c = commit(key, m, rng);
    EXPECT_TRUE(open_verify(key, c.value, m, c.blinding));
    EXPECT_FALSE(open_verify(key, c.value, m + 1, c.blinding));
    EXPECT_FALSE(open_verify(key, c.value, m, c.blinding + 1));
  }
}

TEST(Transcript, DeterministicAndOrderSensitive) {
  std::vector<std::string> ab{"alpha", "beta"}, ba{"beta", "alpha"};
  EXPECT_EQ(transcript_challenge("L", ab, 80), transcript_challenge("L", ab, 80));
  EXPECT_NE(transcript_challenge("L", ab, 80), transcript_challenge("L", ba, 80));
  EXPECT_NE(transcript_challenge("L", ab, 80), transcript_challenge("M", ab, 80));
  EXPECT_LE(bit_length(transcript_challenge("L", ab, 80)), 80u);
  EXPECT_LE(bit_length(transcript_challenge("L", ab, 256)), 256u);
  // Framing keeps ("ab","c") apart from ("a","bc").
  std::vector<std::string> x{"ab", "c"}, y{"a", "bc"};
  EXPECT_NE(transcript_challenge("L", x, 256), transcript_challenge("L", y, 256));
}

TEST(Transcript, EmptyListIsHashOfFramedLabel) {
  std::vector<std::uint8_t> framed{0, 0, 0, 5, 'l', 'a', 'b', 'e', 'l'};
  Digest d = sha256(framed);
  Int expect = from_magnitude_bytes(d);
  EXPECT_EQ(transcript_challenge("label", {}, 256), expect);
  EXPECT_EQ(transcript_challenge("label", {}, 80), expect >> 176);
  EXPECT_THROW(transcript_challenge("label", {}, 0), Error);
}

TEST(Canonical, IntegerFieldsAreStrict) {
  EXPECT_EQ(encode_int(0), "00000000");
  EXPECT_EQ(encode_int(255), "00000001ff");
  EXPECT_EQ(encode_int(-256), "-000000020100");
  for (Int x : {Int(0), Int(1), Int(-77), Int(pow2(300) + 5)}) EXPECT_EQ(decode_int(encode_int(x)), x);
  EXPECT_THROW(decode_int("0000000200ff"), Error);
  EXPECT_THROW(decode_int("00000002ff"), Error);
  EXPECT_THROW(decode_int("-00000000"), Error);
  EXPECT_THROW(decode_int("00000001FF"), Error);
  EXPECT_THROW(decode_int("0000000"), Error);
  json j = {{"b", 1}, {"a", 2}};
  EXPECT_EQ(canonical_dump(j), R"({"a":2,"b":1})");
}

TEST(Canonical, TaintPatternsFindEachRendering) {
  Int ssn(123456789);
  EXPECT_TRUE(contains_taint("x123456789y", ssn));
  EXPECT_TRUE(contains_taint(json(ssn).dump(), ssn));
  EXPECT_FALSE(contains_taint("123456780", ssn));
}

TEST(Sealing, AesGcmRoundTripAndWrongPassphrase) {
  std::vector<std::uint8_t> salt(16, 1), iv(12, 2);
  std::string plain = "wallet contents";
  auto box = seal("pw", as_bytes(plain), salt, iv, 1000);
  auto out = open("pw", box);
  EXPECT_EQ(std::string(out.begin(), out.end()), plain);
  EXPECT_THROW(open("wrong", box), Error);
  box.ciphertext[0] ^= 1;
  EXPECT_THROW(open("pw", box), Error);
}

TEST(Primes, SafeCofactorsAndTimeout) {
  Rng rng(61);
  Int p = random_safe_prime_cofactor(64, rng);
  EXPECT_EQ(bit_length(p), 64u);
  EXPECT_TRUE(is_probable_prime(p));
  EXPECT_TRUE(is_probable_prime(2 * p + 1));
  EXPECT_THROW(random_safe_prime_cofactor(512, rng, 0), Error);
}

TEST(Rng, SeededStreamsReplay) {
  Rng a(5), b(5), c(6);
  EXPECT_EQ(a.bits(200), b.bits(200));
  EXPECT_NE(a.bits(200), c.bits(200));
  auto fa = a.fork("x");
  auto fb = b.fork("x");
  EXPECT_EQ(fa(), fb());
  for (int i = 0; i < 200; ++i) {
    Int v = a.between(10, 20);
    EXPECT_GE(v, 10);
    EXPECT_LE(v, 20);
  }
}

}  // namespace
}  // namespace fcguard::crypto
