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

#include <memory>
#include <set>

#include "fcguard/crypto/elgamal.hpp"
#include "fcguard/crypto/paillier.hpp"
#include "fcguard/error.hpp"
#include "fcguard/presentations/session.hpp"

namespace fcguard::presentations {
namespace {

using credentials::Credential;
using credentials::Issuer;
using credentials::Wallet;
using crypto::RawAttribute;
using crypto::Rng;

struct ToyWorld {
  Rng rng{900};
  ledger::Registry registry;
  Issuer platform;
  Issuer bank;
  crypto::ElGamalKeyPair aa;
  crypto::PaillierKeyPair bank_enc;
  crypto::EncryptionPublicKey aa_pk;
  crypto::EncryptionPublicKey bank_pk;

  ToyWorld() {
    const auto& params = crypto::profile(crypto::Profile::kToy);
    platform = credentials::make_issuer(credentials::platform_schema(), "platform-def",
                                        crypto::cl_keygen(4, params, rng));
    bank = credentials::make_issuer(credentials::bank_schema(), "bank-def",
                                    crypto::cl_keygen(4, params, rng));
    credentials::publish_definition(registry, platform.schema, platform.definition);
    credentials::publish_definition(registry, bank.schema, bank.definition);
    auto group = crypto::generate_group(params.group_bits, rng);
    publish_commitment_key(registry, crypto::group_commitment_key(group));
    aa = crypto::elgamal_keygen(group, rng);
    bank_enc = crypto::paillier_keygen(params.group_bits, rng);
    aa_pk = {"aa", aa.pub};
    bank_pk = {"bank", bank_enc.pub};
  }

  Wallet holder(std::int64_t ssn, std::int64_t bank_ssn, std::int64_t birthday = 19900101,
                std::int64_t account = 12345678901234567) {
    Wallet w(credentials::LinkSecret::generate(rng));
    obtain(w, platform, {std::string("Alice Example"), birthday, ssn});
    obtain(w, bank, {std::string("Bank of A"), account, bank_ssn});
    return w;
  }

  void obtain(Wallet& w, const Issuer& issuer, std::vector<RawAttribute> values) {
    auto pending = credentials::create_credential_request(registry, issuer.definition.id,
                                                          w.link_secret(), "issue", rng);
    auto issued = credentials::issue_credential(issuer, pending.request, "issue", values, rng);
    credentials::holder_verify_and_store(w, registry, issued, pending);
  }
};

class PresentationsTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { world_ = std::make_unique<ToyWorld>(); }
  static void TearDownTestSuite() { world_.reset(); }
  static std::unique_ptr<ToyWorld> world_;
  ToyWorld& w() { return *world_; }
};
std::unique_ptr<ToyWorld> PresentationsTest::world_;

// Pointers to every integer-field leaf of a JSON value.
void collect_leaves(json& j, std::vector<json*>& out) {
  if (j.is_object() || j.is_array()) {
    for (auto& child : j) collect_leaves(child, out);
  } else if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    try {
      crypto::decode_int(s);
      out.push_back(&j);
    } catch (const Error&) {
    }
  }
}

TEST_F(PresentationsTest, HonestPresentationVerifiesAndBindsNonce) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "order-1", w().rng);
  auto vp = s.present("platform-def", {}, {"ssn", "birthday"});
  EXPECT_TRUE(verify_presentation(w().registry, vp, "order-1"));
  EXPECT_FALSE(verify_presentation(w().registry, vp, "order-2"));
  auto replay = vp;
  replay.nonce = "order-2";
  EXPECT_FALSE(verify_presentation(w().registry, replay, "order-2"));
  auto text = json(vp).dump();
  EXPECT_FALSE(crypto::contains_taint(text, 123456789));
  EXPECT_FALSE(crypto::contains_taint(text, 19900101));
  EXPECT_FALSE(crypto::contains_taint(text, wallet.link_secret().value));
  auto back = json::parse(text).get<Presentation>();
  EXPECT_TRUE(verify_presentation(w().registry, back, "order-1"));
}

TEST_F(PresentationsTest, BankPresentationDisclosesOnlyBankName) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp = s.present("bank-def", {"bank_name"}, {"account", "ssn"});
  ASSERT_EQ(vp.disclosed.size(), 1u);
  EXPECT_TRUE(vp.disclosed.contains("bank_name"));
  EXPECT_TRUE(verify_presentation(w().registry, vp, "n"));
  EXPECT_FALSE(crypto::contains_taint(json(vp).dump(), crypto::Int("12345678901234567")));
}

TEST_F(PresentationsTest, DiscloseAllMatchesCredential) {
  auto wallet = w().holder(111223333, 111223333);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp = s.present("platform-def", {"name", "birthday", "ssn"}, {});
  EXPECT_TRUE(verify_presentation(w().registry, vp, "n"));
  const auto& cred = wallet.get("platform-def");
  for (const auto& a : cred.attributes) EXPECT_EQ(vp.disclosed.at(a.name).encoded, a.encoded);
  EXPECT_THROW(s.present("platform-def", {"favourite_colour"}, {}), Error);
}

TEST_F(PresentationsTest, LiesAboutDisclosedValuesFail) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp = s.present("platform-def", {"name", "birthday"}, {"ssn"});
  auto bad = vp;
  bad.disclosed["birthday"] = DisclosedAttribute{std::int64_t{19800101}, 19800101};
  EXPECT_FALSE(verify_presentation(w().registry, bad, "n"));
  bad = vp;
  bad.definition_id = "bank-def";
  EXPECT_FALSE(verify_presentation(w().registry, bad, "n"));
}

TEST_F(PresentationsTest, EveryIntegerFieldMutationIsRejected) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp = s.present("platform-def", {"name"}, {"ssn", "birthday"});
  json base = vp;
  std::vector<json*> leaves;
  collect_leaves(base, leaves);
  ASSERT_GE(leaves.size(), 10u);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    json copy = vp;
    std::vector<json*> mine;
    collect_leaves(copy, mine);
    *mine[i] = crypto::encode_int(crypto::decode_int(mine[i]->get<std::string>()) + 1);
    EXPECT_FALSE(verify_presentation(w().registry, copy.get<Presentation>(), "n")) << i;
  }
}

TEST_F(PresentationsTest, HundredPresentationsShareNoRandomizedValue) {
  auto wallet = w().holder(123456789, 123456789);
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) {
    HolderSession s(wallet, w().registry, "n", w().rng);
    auto vp = s.present("platform-def", {}, {"ssn"});
    std::vector<crypto::Int> fields{vp.A_prime, vp.challenge, vp.s_e, vp.s_v};
    for (const auto& [k, v] : vp.s_m) fields.push_back(v);
    for (const auto& [k, v] : vp.s_rho) fields.push_back(v);
    for (const auto& [k, v] : vp.commitments) fields.push_back(v);
    for (const auto& f : fields) EXPECT_TRUE(seen.insert(crypto::encode_int(f)).second);
  }
}

TEST_F(PresentationsTest, EqualityHonestRefusedAndSpliced) {
  auto good = w().holder(123456789, 123456789);
  HolderSession s(good, w().registry, "n", w().rng);
  auto vp_pu = s.present("platform-def", {}, {"ssn"});
  auto vp_bu = s.present("bank-def", {"bank_name"}, {"ssn", "account"});
  auto eq = s.prove_equality(vp_pu, "ssn", vp_bu, "ssn");
  EXPECT_TRUE(verify_equality(w().registry, vp_pu, vp_bu, eq, "n"));
  EXPECT_FALSE(verify_equality(w().registry, vp_pu, vp_bu, eq, "m"));
  auto back = json::parse(json(eq).dump()).get<EqualityProof>();
  EXPECT_TRUE(verify_equality(w().registry, vp_pu, vp_bu, back, "n"));

  auto bad = w().holder(123456789, 123456780);
  HolderSession t(bad, w().registry, "n", w().rng);
  auto b_pu = t.present("platform-def", {}, {"ssn"});
  auto b_bu = t.present("bank-def", {"bank_name"}, {"ssn", "account"});
  try {
    t.prove_equality(b_pu, "ssn", b_bu, "ssn");
    FAIL() << "prover accepted unequal values";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProofRefused);
  }
}

TEST_F(PresentationsTest, FiftyEqualitySplicesRejected) {
  auto a = w().holder(123456789, 123456789);
  auto b = w().holder(987654321, 987654321);
  Rng pick(77);
  int rejected = 0;
  for (int i = 0; i < 50; ++i) {
    HolderSession sa(a, w().registry, "n", w().rng);
    HolderSession sb(b, w().registry, "n", w().rng);
    auto a_pu = sa.present("platform-def", {}, {"ssn"});
    auto a_bu = sa.present("bank-def", {"bank_name"}, {"ssn", "account"});
    auto b_pu = sb.present("platform-def", {}, {"ssn"});
    auto b_bu = sb.present("bank-def", {"bank_name"}, {"ssn", "account"});
    auto eq_a = sa.prove_equality(a_pu, "ssn", a_bu, "ssn");
    auto eq_b = sb.prove_equality(b_pu, "ssn", b_bu, "ssn");
    // User A's identity with user B's bank credential.
    EqualityProof spliced;
    switch (pick.below_u64(4)) {
      case 0: spliced = eq_a; break;
      case 1: spliced = eq_b; break;
      case 2:
        spliced = eq_a;
        spliced.presentation_b = b_bu.id();
        break;
      default:
        spliced = eq_b;
        spliced.presentation_a = a_pu.id();
        spliced.challenge = eq_a.challenge;
        break;
    }
    if (!verify_equality(w().registry, a_pu, b_bu, spliced, "n")) ++rejected;
  }
  EXPECT_EQ(rejected, 50);
}

TEST_F(PresentationsTest, VerifiableEncryptionToBankAndAuthority) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp_pu = s.present("platform-def", {}, {"ssn"});
  auto vp_bu = s.present("bank-def", {"bank_name"}, {"ssn", "account"});
  auto ua = s.prove_encryption(vp_pu, "ssn", w().aa_pk);
  auto bu = s.prove_encryption(vp_bu, "account", w().bank_pk);
  EXPECT_TRUE(verify_verifiable_encryption(w().registry, vp_pu, ua, w().aa_pk, "n"));
  EXPECT_TRUE(verify_verifiable_encryption(w().registry, vp_bu, bu, w().bank_pk, "n"));
  EXPECT_EQ(crypto::elgamal_decrypt(w().aa.priv, std::get<crypto::ElGamalCiphertext>(ua.ciphertext)),
            123456789);
  EXPECT_EQ(crypto::paillier_decrypt(w().bank_enc, std::get<crypto::PaillierCiphertext>(bu.ciphertext)),
            crypto::Int("12345678901234567"));
  // Wrong key, wrong presentation, swapped ciphertext.
  EXPECT_FALSE(verify_verifiable_encryption(w().registry, vp_pu, ua, w().bank_pk, "n"));
  EXPECT_FALSE(verify_verifiable_encryption(w().registry, vp_bu, ua, w().aa_pk, "n"));
  auto swapped = ua;
  swapped.ciphertext = crypto::elgamal_encrypt(w().aa.pub, 123456780, w().rng);
  EXPECT_FALSE(verify_verifiable_encryption(w().registry, vp_pu, swapped, w().aa_pk, "n"));
  auto swapped_b = bu;
  swapped_b.ciphertext = crypto::paillier_encrypt(w().bank_enc.pub, 12345678901234560, w().rng);
  EXPECT_FALSE(verify_verifiable_encryption(w().registry, vp_bu, swapped_b, w().bank_pk, "n"));
  // Fresh ciphertext per call.
  auto again = s.prove_encryption(vp_pu, "ssn", w().aa_pk);
  EXPECT_NE(crypto::ciphertext_to_json(again.ciphertext), crypto::ciphertext_to_json(ua.ciphertext));
}

TEST_F(PresentationsTest, VerifiableEncryptionComponentMutations) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp_pu = s.present("platform-def", {}, {"ssn"});
  auto vp_bu = s.present("bank-def", {"bank_name"}, {"ssn", "account"});
  struct Case {
    const Presentation* p;
    VerifiableEncryptionProof proof;
    const crypto::EncryptionPublicKey* pk;
  };
  std::vector<Case> cases{{&vp_pu, s.prove_encryption(vp_pu, "ssn", w().aa_pk), &w().aa_pk},
                          {&vp_bu, s.prove_encryption(vp_bu, "account", w().bank_pk), &w().bank_pk}};
  for (const auto& c : cases) {
    json base = c.proof;
    std::vector<json*> leaves;
    collect_leaves(base, leaves);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      json copy = c.proof;
      std::vector<json*> mine;
      collect_leaves(copy, mine);
      *mine[i] = crypto::encode_int(crypto::decode_int(mine[i]->get<std::string>()) + 1);
      EXPECT_FALSE(verify_verifiable_encryption(w().registry, *c.p,
                                                copy.get<VerifiableEncryptionProof>(), *c.pk, "n"));
    }
  }
}

TEST_F(PresentationsTest, AgePredicate) {
  auto threshold = age_threshold(20250101, 18);
  EXPECT_EQ(threshold, 20070101);
  for (std::int64_t birthday : {19900101ll, 20070101ll}) {
    auto wallet = w().holder(123456789, 123456789, birthday);
    HolderSession s(wallet, w().registry, "n", w().rng);
    auto vp = s.present("platform-def", {}, {"ssn", "birthday"});
    auto proof = s.prove_predicate_ge(vp, "birthday", threshold);
    EXPECT_TRUE(verify_predicate(w().registry, vp, proof, threshold, "n")) << birthday;
    EXPECT_FALSE(verify_predicate(w().registry, vp, proof, threshold - 1, "n"));
    EXPECT_FALSE(verify_predicate(w().registry, vp, proof, threshold, "other"));
    auto back = json::parse(json(proof).dump()).get<PredicateProof>();
    EXPECT_TRUE(verify_predicate(w().registry, vp, back, threshold, "n"));
  }
  for (std::int64_t birthday : {20200101ll, 20070102ll}) {
    auto wallet = w().holder(123456789, 123456789, birthday);
    HolderSession s(wallet, w().registry, "n", w().rng);
    auto vp = s.present("platform-def", {}, {"ssn", "birthday"});
    try {
      s.prove_predicate_ge(vp, "birthday", threshold);
      FAIL() << birthday;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kProofRefused);
    }
  }
}

TEST_F(PresentationsTest, PredicateAgreesWithIntegerComparison) {
  const std::int64_t birthdays[] = {19500315, 19801231, 19990101, 20000229,
                                    20061231, 20070101, 20070102, 20150704};
  const std::int64_t thresholds[] = {19450101, 19801231, 19991231, 20000228,
                                     20070101, 20061231, 20101010, 20200101};
  for (auto birthday : birthdays) {
    auto wallet = w().holder(123456789, 123456789, birthday);
    HolderSession s(wallet, w().registry, "n", w().rng);
    auto vp = s.present("platform-def", {}, {"birthday"});
    for (auto t : thresholds) {
      bool expected = birthday <= t;
      bool accepted = false;
      try {
        auto proof = s.prove_predicate_ge(vp, "birthday", t);
        accepted = verify_predicate(w().registry, vp, proof, t, "n");
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kProofRefused);
      }
      EXPECT_EQ(accepted, expected) << birthday << " vs " << t;
    }
  }
}

TEST_F(PresentationsTest, PredicateBitMutationsRejected) {
  auto wallet = w().holder(123456789, 123456789, 19900101);
  HolderSession s(wallet, w().registry, "n", w().rng);
  auto vp = s.present("platform-def", {}, {"birthday"});
  auto proof = s.prove_predicate_ge(vp, "birthday", 20070101);
  for (std::size_t k = 0; k < proof.bits.size(); k += 5) {
    for (int field = 0; field < 5; ++field) {
      auto bad = proof;
      auto& b = bad.bits[k];
      crypto::Int* target[] = {&b.commitment, &b.c0, &b.c1, &b.s0, &b.s1};
      *target[field] += 1;
      EXPECT_FALSE(verify_predicate(w().registry, vp, bad, 20070101, "n"));
    }
  }
  auto bad = proof;
  std::swap(bad.bits[0], bad.bits[1]);
  EXPECT_FALSE(verify_predicate(w().registry, vp, bad, 20070101, "n"));
}

TEST_F(PresentationsTest, BundleRoundTrip) {
  auto wallet = w().holder(123456789, 123456789);
  HolderSession s(wallet, w().registry, "n", w().rng);
  PresentationBundle bundle;
  bundle.nonce = s.nonce();
  bundle.presentations.push_back(s.present("platform-def", {}, {"ssn", "birthday"}));
  bundle.encryptions.push_back(s.prove_encryption(bundle.presentations[0], "ssn", w().aa_pk));
  bundle.predicates.push_back(s.prove_predicate_ge(bundle.presentations[0], "birthday", 20070101));
  auto text = crypto::canonical_dump(json(bundle));
  auto back = json::parse(text).get<PresentationBundle>();
  EXPECT_EQ(crypto::canonical_dump(json(back)), text);
  EXPECT_TRUE(verify_presentation(w().registry, back.presentations[0], "n"));
  EXPECT_FALSE(crypto::contains_taint(text, 123456789));
}

}  // namespace
}  // namespace fcguard::presentations
