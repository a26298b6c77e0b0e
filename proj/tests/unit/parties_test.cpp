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

#include <map>
#include <set>

#include "fcguard/crypto/canonical.hpp"
#include "fcguard/error.hpp"
#include "fcguard/parties/simulation.hpp"

namespace fcguard::parties {
namespace {

constexpr std::int64_t kAliceAccount = 12345678901234567;
constexpr std::int64_t kBobAccount = 22345678901234561;
constexpr std::int64_t kPlatformAccount = 99000000000000001;

Scenario base_scenario(std::uint64_t seed = 11) {
  Scenario s;
  s.name = "unit";
  s.seed = seed;
  s.config.max_delay_s = 600;
  s.banks.push_back({"Bank of A",
                     {{kAliceAccount, 123456789, 100000, ""},
                      {kBobAccount, 987654321, 100, ""},
                      {kPlatformAccount, 555000111, 0, "platform"}}});
  s.platform = {"Bank of A", kPlatformAccount, 1'000'000};
  UserSpec alice;
  alice.id = "alice";
  alice.pii = {"Alice Example", 19900101, 123456789};
  alice.bank = "Bank of A";
  alice.account = kAliceAccount;
  s.users.push_back(alice);
  UserSpec bob;
  bob.id = "bob";
  bob.pii = {"Bob Example", 19850615, 987654321};
  bob.bank = "Bank of A";
  bob.account = kBobAccount;
  s.users.push_back(bob);
  return s;
}

OrderSpec order(std::string user, std::int64_t amount, std::size_t addresses = 1,
                std::string attack = "none") {
  OrderSpec o;
  o.user = std::move(user);
  o.crypto_amount = amount;
  o.address_count = addresses;
  o.attack = std::move(attack);
  return o;
}

bool all_pass(const SimulationReport& r) {
  for (const auto& p : r.properties) {
    if (!p.pass) {
      ADD_FAILURE() << p.name << ": " << p.detail;
      return false;
    }
  }
  return true;
}

TEST(PartiesTypes, CalendarAndPii) {
  EXPECT_TRUE(valid_calendar_date(20000229));
  EXPECT_FALSE(valid_calendar_date(19000229));
  EXPECT_FALSE(valid_calendar_date(20240431));
  EXPECT_FALSE(valid_calendar_date(20241301));
  EXPECT_TRUE(pii_valid({"A", 19900101, 1}));
  EXPECT_FALSE(pii_valid({"A", 19900101, 0}));
  EXPECT_FALSE(pii_valid({"A", 19900101, 1000000000}));
  EXPECT_FALSE(pii_valid({"", 19900101, 5}));
}

TEST(PartiesTypes, TransitionLegality) {
  using S = OrderState;
  EXPECT_TRUE(TransitionLog::legal(S::kCreated, S::kIdentityVerified));
  EXPECT_TRUE(TransitionLog::legal(S::kCryptoSent, S::kComplete));
  EXPECT_TRUE(TransitionLog::legal(S::kBankVerified, S::kFailed));
  EXPECT_FALSE(TransitionLog::legal(S::kCreated, S::kBankVerified));
  EXPECT_FALSE(TransitionLog::legal(S::kComplete, S::kFailed));
  EXPECT_FALSE(TransitionLog::legal(S::kFailed, S::kCreated));
  TransitionLog log;
  log.record("o", S::kCreated, S::kFiatSettled, 0);
  EXPECT_FALSE(log.safe());
  for (auto s : {S::kCreated, S::kIdentityVerified, S::kBankVerified, S::kFiatSettled,
                 S::kCryptoSent, S::kComplete, S::kFailed}) {
    EXPECT_EQ(parse_order_state(to_string(s)), s);
  }
}

TEST(AddressPool, PartitionIsUniformOverCompositions) {
  crypto::Rng rng(3);
  std::map<std::vector<std::int64_t>, int> counts;
  const int n = 6000;
  for (int i = 0; i < n; ++i) {
    auto p = uniform_partition(5, 3, rng);
    std::int64_t sum = 0;
    for (auto x : p) {
      EXPECT_GT(x, 0);
      sum += x;
    }
    EXPECT_EQ(sum, 5);
    ++counts[p];
  }
  // C(4,2) = 6 compositions of 5 into 3 positive parts.
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [_, c] : counts) EXPECT_NEAR(c, n / 6, n / 6 * 0.15);
  EXPECT_EQ(uniform_partition(2, 5, rng).size(), 2u);
  EXPECT_EQ(uniform_partition(1, 1, rng), std::vector<std::int64_t>{1});
}

TEST(AddressPool, RotationDelaysAndPairs) {
  PoolConfig cfg{600'000'000, 10, 3};
  AddressPool pool(cfg, "pool");
  crypto::Rng rng(4);
  std::map<std::string, std::uint64_t> epoch_of;
  std::int64_t lo = cfg.max_delay_us, hi = 0;
  for (int i = 0; i < 25; ++i) {
    std::vector<std::string> dest{"u" + std::to_string(i) + "a", "u" + std::to_string(i) + "b"};
    auto plan = pool.schedule("o" + std::to_string(i), 100, dest, 1000, rng);
    EXPECT_EQ(pool.epoch(), static_cast<std::uint64_t>(i / 10));
    for (const auto& t : plan) {
      EXPECT_GE(t.release_us, 1000);
      EXPECT_LE(t.release_us, 1000 + cfg.max_delay_us);
      lo = std::min(lo, t.release_us - 1000);
      hi = std::max(hi, t.release_us - 1000);
      auto [it, fresh] = epoch_of.emplace(t.from, pool.epoch());
      EXPECT_EQ(it->second, pool.epoch()) << "pool address reused across epochs";
    }
  }
  EXPECT_EQ(pool.addresses(0).size(), 3u);
  EXPECT_EQ(pool.used_pairs().size(), 50u);
  // Spread over most of [0, D].
  EXPECT_LT(lo, cfg.max_delay_us / 5);
  EXPECT_GT(hi, cfg.max_delay_us * 4 / 5);
}

TEST(EventQueue, OrdersByTimeThenInsertion) {
  EventQueue q;
  std::vector<int> seen;
  q.at(50, [&] { seen.push_back(2); });
  q.at(10, [&] { seen.push_back(1); });
  q.at(50, [&] { seen.push_back(3); });
  q.at(90, [&] { q.at(95, [&] { seen.push_back(5); }); seen.push_back(4); });
  q.advance(60);
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(q.now_us(), 60);
  q.drain();
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_THROW(q.at(10, [] {}), Error);
}

TEST(Scenario, JsonRoundTripAndStrictness) {
  auto s = base_scenario();
  s.orders.push_back(order("alice", 25, 3));
  auto j = scenario_to_json(s);
  auto back = scenario_from_json(j);
  EXPECT_EQ(scenario_to_json(back), j);
  auto bad = j;
  bad["colour"] = "blue";
  EXPECT_THROW(scenario_from_json(bad), Error);
  bad = j;
  bad["orders"][0]["user"] = "mallory";
  EXPECT_THROW(scenario_from_json(bad), Error);
  bad = j;
  bad["orders"][0]["attack"] = "nuke";
  EXPECT_THROW(scenario_from_json(bad), Error);
  bad = j;
  bad["users"][0].erase("ssn");
  try {
    scenario_from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("users[0]"), std::string::npos);
  }
}

TEST(Simulation, HappyPathCompletesAndAuditsWithoutDecryption) {
  auto s = base_scenario();
  s.config.min_age = 18;
  s.orders.push_back(order("alice", 25, 3));
  Simulation sim(s);
  auto rep = sim.run();
  EXPECT_TRUE(all_pass(rep));
  ASSERT_EQ(rep.orders.size(), 1u);
  const auto& o = rep.orders[0];
  EXPECT_EQ(o.state, "complete") << o.cause;
  EXPECT_EQ(o.fiat_amount, 250);
  EXPECT_EQ(sim.bank("Bank of A").accounts().at(kAliceAccount).balance, 100000 - 250);
  EXPECT_EQ(sim.bank("Bank of A").accounts().at(kPlatformAccount).balance, 250);
  std::int64_t received = 0;
  std::set<std::string> senders;
  for (const auto& a : o.addresses) {
    received += sim.chain().balance(a);
    for (const auto& tx : sim.chain().query(a)) senders.insert(tx.from);
  }
  EXPECT_EQ(received, 25);
  for (const auto& from : senders) EXPECT_EQ(from.rfind("pool-e0-", 0), 0u) << from;
  // Receipts to both sides.
  EXPECT_EQ(sim.user("alice").receipts.size(), 1u);
  ASSERT_EQ(rep.audit.size(), 1u);
  EXPECT_EQ(rep.audit[0].verdict, AuditVerdict::kCompliant);
  EXPECT_EQ(rep.aa_decryptions, 0u);
  // The state log walks every step.
  std::vector<OrderState> states;
  for (const auto& t : sim.platform().transitions().transitions()) states.push_back(t.to);
  EXPECT_EQ(states, (std::vector<OrderState>{OrderState::kIdentityVerified,
                                              OrderState::kBankVerified, OrderState::kFiatSettled,
                                              OrderState::kCryptoSent, OrderState::kComplete}));
  // The record the AA got has no crypto details.
  for (const auto& m : sim.network().messages()) {
    if (m.kind != "exchange_record") continue;
    for (const auto& a : o.addresses) EXPECT_EQ(m.payload.find(a), std::string::npos);
    EXPECT_EQ(m.payload.find("pool-"), std::string::npos);
  }
}

TEST(Simulation, MisreportIsDeanonymizedToTheRightSsn) {
  auto s = base_scenario();
  s.users[0].self_report = "wrong";
  s.users[1].self_report = "none";
  s.orders.push_back(order("alice", 10));
  s.orders.push_back(order("bob", 5));
  Simulation sim(s);
  auto rep = sim.run();
  EXPECT_TRUE(all_pass(rep));
  ASSERT_EQ(rep.audit.size(), 2u);
  EXPECT_EQ(rep.audit[0].verdict, AuditVerdict::kDeanonymized);
  EXPECT_EQ(rep.audit[0].ssn, 123456789);
  EXPECT_EQ(rep.audit[1].verdict, AuditVerdict::kDeanonymized);
  EXPECT_EQ(rep.audit[1].ssn, 987654321);
  EXPECT_EQ(rep.aa_decryptions, 2u);
}

TEST(Simulation, FailuresAreAtomic) {
  auto s = base_scenario();
  s.users[1].bank_ssn = 987654320;  // bank's books disagree with the SSA
  s.banks[0].accounts[1].owner_ssn = 987654320;
  s.orders.push_back(order("alice", 25, 1, "replay_stolen"));
  s.orders.push_back(order("bob", 1));           // equality fails
  s.orders.push_back(order("alice", 20000));     // 200000 fiat > balance
  s.orders.push_back(order("alice", 5, 1, "wrong_definition"));
  Simulation sim(s);
  auto rep = sim.run();
  EXPECT_TRUE(all_pass(rep));
  ASSERT_EQ(rep.orders.size(), 4u);
  EXPECT_EQ(rep.orders[0].state, "failed");
  EXPECT_EQ(rep.orders[0].cause, "mfa");
  EXPECT_EQ(rep.orders[0].client, "adversary");
  EXPECT_EQ(rep.orders[1].cause, "equality");
  EXPECT_EQ(rep.orders[2].cause, "funds");
  EXPECT_EQ(rep.orders[3].cause, "identity");
  EXPECT_EQ(sim.fiat_total(), sim.initial_fiat());
  EXPECT_EQ(sim.bank("Bank of A").accounts().at(kAliceAccount).balance, 100000);
  EXPECT_EQ(sim.chain().transactions().size(), 1u);  // genesis only
  EXPECT_TRUE(rep.audit.empty());
}

TEST(Simulation, StaleReplayAndAddressReuseAreRejected) {
  auto s = base_scenario();
  s.orders.push_back(order("alice", 3));
  s.orders.push_back(order("alice", 3, 1, "replay_stale"));
  auto reuse = order("bob", 2);
  s.orders.push_back(reuse);
  Simulation sim(s);
  sim.onboard_all();
  auto first = sim.run_order(s.orders[0]);
  auto stale = sim.run_order(s.orders[1]);
  auto again = s.orders[2];
  again.addresses = first.addresses;
  auto reused = sim.run_order(again);
  sim.settle_chain();
  EXPECT_EQ(stale.state, "failed");
  EXPECT_EQ(stale.cause, "identity");
  EXPECT_EQ(reused.state, "failed");
  EXPECT_EQ(reused.cause, "address-reuse");
  for (const auto& p : sim.check_properties()) EXPECT_TRUE(p.pass) << p.name << p.detail;
}

TEST(Simulation, UnregisteredAndUnderageUsersFail) {
  auto s = base_scenario();
  s.config.min_age = 18;
  s.config.today = 20250101;
  s.users[1].in_ssa = false;
  s.users[0].pii.birthday = 20100101;
  s.orders.push_back(order("alice", 3));
  s.orders.push_back(order("bob", 3));
  Simulation sim(s);
  auto rep = sim.run();
  EXPECT_TRUE(all_pass(rep));
  EXPECT_TRUE(rep.registrations[0].ok);
  EXPECT_FALSE(rep.registrations[1].ok);
  EXPECT_EQ(rep.orders[0].cause, "predicate");
  EXPECT_EQ(rep.orders[1].cause, "identity");
}

TEST(Simulation, DeterministicForASeed) {
  auto s = base_scenario(77);
  s.orders.push_back(order("alice", 9, 2));
  s.orders.push_back(order("bob", 4));
  Simulation a(s), b(s);
  auto ra = a.run();
  auto rb = b.run();
  EXPECT_EQ(a.network().event_log_jsonl(), b.network().event_log_jsonl());
  EXPECT_EQ(a.chain().dump_jsonl(), b.chain().dump_jsonl());
  EXPECT_EQ(ra.to_json(), rb.to_json());
  auto c = base_scenario(78);
  c.orders = s.orders;
  Simulation other(c);
  other.run();
  EXPECT_NE(a.chain().dump_jsonl(), other.chain().dump_jsonl());
}

TEST(Simulation, BaselineLeaksWhatFcGuardHides) {
  auto s = base_scenario();
  s.orders.push_back(order("alice", 25, 3));
  s.orders.push_back(order("bob", 5));
  s.config.max_delay_s = 0;
  Simulation fc(s);
  auto rf = fc.run();
  s.mode = Mode::kBaseline;
  Simulation base(s);
  auto rb = base.run();
  EXPECT_TRUE(all_pass(rf));
  EXPECT_TRUE(all_pass(rb));
  EXPECT_EQ(fc.platform_taint_hits(), 0u);
  EXPECT_GT(base.platform_taint_hits(), 0u);
  EXPECT_EQ(fc.bank_address_hits(), 0u);
  // The baseline platform's own books link the SSN to the address.
  auto books = base.platform().books().dump();
  EXPECT_NE(books.find("123456789"), std::string::npos);
  EXPECT_NE(books.find(rb.orders[0].addresses[0]), std::string::npos);
  // Same money moved either way.
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(rf.orders[i].state, "complete");
    EXPECT_EQ(rb.orders[i].state, "complete");
  }
  for (const auto& [num, acct] : fc.bank("Bank of A").accounts()) {
    EXPECT_EQ(acct.balance, base.bank("Bank of A").accounts().at(num).balance);
  }
  EXPECT_EQ(fc.chain().total_supply(), base.chain().total_supply());
  EXPECT_EQ(fc.chain().balance("platform-treasury"), base.chain().balance("platform-treasury"));
}

TEST(Simulation, BaselineHasNoDefenceAgainstStolenSessions) {
  auto s = base_scenario();
  s.mode = Mode::kBaseline;
  s.orders.push_back(order("alice", 5, 1, "replay_stolen"));
  Simulation sim(s);
  auto rep = sim.run();
  EXPECT_EQ(rep.orders[0].state, "complete");
  EXPECT_EQ(rep.orders[0].client, "adversary");
}

}  // namespace
}  // namespace fcguard::parties
