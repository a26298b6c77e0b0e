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

#include <filesystem>
#include <fstream>
#include <set>

#include "fcguard/credentials/wallet.hpp"
#include "fcguard/error.hpp"

namespace fcguard::credentials {
namespace {

using crypto::RawAttribute;
using crypto::Rng;
using ledger::EntryKind;
using ledger::Registry;

class CredentialsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng keyrng(100);
    const auto& params = crypto::profile(crypto::Profile::kToy);
    platform_ = make_issuer(platform_schema(), "platform-def",
                            crypto::cl_keygen(4, params, keyrng));
    bank_ = make_issuer(bank_schema(), "bank-def", crypto::cl_keygen(4, params, keyrng));
    publish_definition(registry_, platform_.schema, platform_.definition);
    publish_definition(registry_, bank_.schema, bank_.definition);
  }

  std::vector<RawAttribute> pii(std::int64_t ssn = 123456789) {
    return {std::string("Alice Example"), std::int64_t{19900101}, ssn};
  }

  Credential issue(Wallet& w, const Issuer& issuer, std::vector<RawAttribute> values,
                   const std::string& nonce = "n-1") {
    auto pending = create_credential_request(registry_, issuer.definition.id, w.link_secret(),
                                             nonce, rng_);
    auto issued = issue_credential(issuer, pending.request, nonce, values, rng_);
    return holder_verify_and_store(w, registry_, issued, pending);
  }

  Rng rng_{101};
  Registry registry_;
  Issuer platform_;
  Issuer bank_;
};

TEST_F(CredentialsTest, PublishedSchemasCarryRoleAttributes) {
  auto ps = fetch_schema(registry_, platform_.schema.id);
  EXPECT_EQ(ps.attributes, (std::vector<std::string>{"name", "birthday", "ssn"}));
  auto bs = fetch_schema(registry_, bank_.schema.id);
  EXPECT_EQ(bs.attributes.size(), 3u);
  EXPECT_EQ(fetch_definition(registry_, "bank-def").public_key.slot_count(),
            bs.attributes.size() + 1);
  auto a = registry_.get(EntryKind::kCredentialDefinition, "platform-def").payload;
  auto b = registry_.get(EntryKind::kCredentialDefinition, "platform-def").payload;
  EXPECT_EQ(a, b);
}

TEST_F(CredentialsTest, RepublishingDefinitionIsRejected) {
  EXPECT_THROW(publish_definition(registry_, platform_.schema, platform_.definition), Error);
  auto wrong = platform_schema("other");
  wrong.attributes.pop_back();
  EXPECT_FALSE(schema_conforms(wrong));
  Rng r(5);
  EXPECT_THROW(make_issuer(wrong, "x", crypto::cl_keygen(4, crypto::profile(crypto::Profile::kToy), r)),
               Error);
}

TEST_F(CredentialsTest, RequestVerifiesAndHidesLinkSecret) {
  Wallet w(LinkSecret::generate(rng_));
  auto def = fetch_definition(registry_, "platform-def");
  auto pending = create_credential_request(registry_, "platform-def", w.link_secret(), "n", rng_);
  EXPECT_TRUE(verify_credential_request(def, pending.request, "n"));
  EXPECT_FALSE(verify_credential_request(def, pending.request, "other-nonce"));
  EXPECT_FALSE(crypto::contains_taint(json(pending.request).dump(), w.link_secret().value));
  auto bad = pending.request;
  bad.blinded_secret += 1;
  EXPECT_FALSE(verify_credential_request(def, bad, "n"));
  EXPECT_THROW(create_credential_request(registry_, "ghost", w.link_secret(), "n", rng_), Error);
}

TEST_F(CredentialsTest, RequestsUseFreshBlinding) {
  Wallet w(LinkSecret::generate(rng_));
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) {
    auto p = create_credential_request(registry_, "platform-def", w.link_secret(), "n", rng_);
    EXPECT_TRUE(seen.insert(crypto::encode_int(p.request.blinded_secret)).second);
  }
}

TEST_F(CredentialsTest, IssueVerifyStore) {
  Wallet w(LinkSecret::generate(rng_));
  const auto& cred = issue(w, platform_, pii());
  EXPECT_EQ(cred.attribute("ssn").encoded, 123456789);
  EXPECT_EQ(w.size(), 1u);
  EXPECT_NE(w.find("platform-def"), nullptr);
  issue(w, bank_, {std::string("Bank of A"), std::int64_t{12345678901234567}, std::int64_t{123456789}});
  EXPECT_EQ(w.size(), 2u);
  for (const auto& id : w.definition_ids()) {
    auto def = fetch_definition(registry_, id);
    EXPECT_TRUE(crypto::cl_verify(def.public_key, credential_slots(w.get(id), w.link_secret()),
                                  w.get(id).signature));
  }
}

TEST_F(CredentialsTest, SchemaMismatchAndBadRequest) {
  Wallet w(LinkSecret::generate(rng_));
  auto pending = create_credential_request(registry_, "platform-def", w.link_secret(), "n", rng_);
  try {
    issue_credential(platform_, pending.request, "n", {std::string("x")}, rng_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaMismatch);
  }
  try {
    issue_credential(platform_, pending.request, "replayed", pii(), rng_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVerificationFailed);
  }
  EXPECT_THROW(issue_credential(bank_, pending.request, "n", pii(), rng_), Error);
}

TEST_F(CredentialsTest, TamperedCredentialRejectedWalletUnchanged) {
  Wallet w(LinkSecret::generate(rng_));
  auto pending = create_credential_request(registry_, "platform-def", w.link_secret(), "n", rng_);
  auto issued = issue_credential(platform_, pending.request, "n", pii(), rng_);
  auto bad = issued;
  bad.signature.A += 1;
  EXPECT_THROW(holder_verify_and_store(w, registry_, bad, pending), Error);
  bad = issued;
  bad.attributes[2].raw = std::int64_t{123456780};
  bad.attributes[2].encoded = 123456780;
  EXPECT_THROW(holder_verify_and_store(w, registry_, bad, pending), Error);
  EXPECT_EQ(w.size(), 0u);
  holder_verify_and_store(w, registry_, issued, pending);
  EXPECT_EQ(w.size(), 1u);
}

TEST_F(CredentialsTest, HundredVectorsRoundTripAndByteMutations) {
  Rng local(202);
  Wallet w(LinkSecret::generate(local));
  for (int trial = 0; trial < 100; ++trial) {
    const Issuer& issuer = trial % 2 ? bank_ : platform_;
    std::vector<RawAttribute> values{
        std::string("name-") + std::to_string(local.below_u64(1000000)),
        static_cast<std::int64_t>(local.below_u64(1000000000000ull)),
        static_cast<std::int64_t>(1 + local.below_u64(999999999))};
    auto pending = create_credential_request(registry_, issuer.definition.id, w.link_secret(),
                                             "t" + std::to_string(trial), local);
    auto issued = issue_credential(issuer, pending.request, pending.request.nonce, values, local);
    ASSERT_NO_THROW(holder_complete(registry_, issued, pending, w.link_secret()));
    // Flip one character of the serialized credential; whatever still
    // parses must be rejected.
    std::string bytes = json(issued).dump();
    std::size_t pos = local.below_u64(bytes.size());
    bytes[pos] = static_cast<char>(bytes[pos] ^ 0x01);
    bool rejected = false;
    try {
      auto mutated = json::parse(bytes).get<Credential>();
      holder_complete(registry_, mutated, pending, w.link_secret());
    } catch (const std::exception&) {
      rejected = true;
    }
    EXPECT_TRUE(rejected) << "position " << pos;
  }
}

TEST_F(CredentialsTest, ReissueGivesFreshSignature) {
  Wallet w(LinkSecret::generate(rng_));
  auto a = issue(w, platform_, pii(), "a").signature;
  auto b = issue(w, platform_, pii(), "b").signature;
  EXPECT_NE(a, b);
  EXPECT_EQ(w.size(), 1u);
}

TEST_F(CredentialsTest, WalletSealedAtRest) {
  Wallet w(LinkSecret::generate(rng_));
  issue(w, platform_, pii());
  auto path = std::filesystem::temp_directory_path() / "fcguard_wallet_test.json";
  w.save(path, "correct horse", rng_);
  std::ifstream in(path);
  std::string raw((std::istreambuf_iterator<char>(in)), {});
  EXPECT_FALSE(crypto::contains_taint(raw, 123456789));
  EXPECT_FALSE(crypto::contains_taint(raw, w.link_secret().value));
  auto back = Wallet::load(path, "correct horse");
  EXPECT_EQ(back.link_secret().value, w.link_secret().value);
  EXPECT_EQ(json(back.get("platform-def")), json(w.get("platform-def")));
  EXPECT_THROW(Wallet::load(path, "wrong"), Error);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace fcguard::credentials
