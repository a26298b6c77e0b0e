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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "fcguard/error.hpp"
#include "fcguard/harness/harness.hpp"

namespace fcguard::harness {
namespace {

namespace fs = std::filesystem;

const std::string kScenarioDir = FCGUARD_SCENARIO_DIR;

fs::path write_temp(const std::string& name, const std::string& text) {
  auto path = fs::temp_directory_path() / ("fcguard_harness_" + name);
  std::ofstream(path) << text;
  return path;
}

std::string error_text(const fs::path& path) {
  try {
    load_scenario(path);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool all_pass(const std::vector<PropertyResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.pass; });
}

TEST(ScenarioFile, SyntaxErrorCarriesLineAndColumn) {
  auto path = write_temp("syntax.json", "{\n  \"name\": \"x\",\n}\n");
  auto msg = error_text(path);
  EXPECT_NE(msg.find(path.string() + ":3:1"), std::string::npos) << msg;
}

TEST(ScenarioFile, FieldErrorCarriesPath) {
  auto s = scenario_to_json(random_scenario(3, Mode::kFcGuard, 2, 1));
  s["users"][1].erase("ssn");
  auto path = write_temp("field.json", s.dump());
  auto msg = error_text(path);
  EXPECT_NE(msg.find("scenario.users[1]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("ssn"), std::string::npos) << msg;
}

TEST(ScenarioFile, UnknownKeyRejected) {
  auto s = scenario_to_json(random_scenario(3, Mode::kFcGuard, 1, 1));
  s["orders"][0]["amount"] = 5;
  auto msg = error_text(write_temp("unknown.json", s.dump()));
  EXPECT_NE(msg.find("scenario.orders[0]"), std::string::npos) << msg;
}

TEST(ScenarioFile, KeyFileResolvedAgainstScenarioDirectory) {
  auto s = load_scenario(kScenarioDir + "/paper_happy_path.json");
  EXPECT_EQ(s.profile, crypto::Profile::kPaper);
  EXPECT_TRUE(fs::exists(s.key_file)) << s.key_file;
}

TEST(ScenarioFile, BundledToyScenariosMeetTheirExpectations) {
  for (const char* name : {"happy_path", "misreport", "replay_attack", "baseline_happy_path",
                           "underage"}) {
    auto s = load_scenario(kScenarioDir + "/" + std::string(name) + ".json");
    auto run = run_scenario(s, nullptr);
    EXPECT_FALSE(run.expectations.empty()) << name;
    EXPECT_TRUE(run.ok()) << name << "\n" << run.summary();
  }
}

TEST(Expectations, MismatchIsReported) {
  auto s = load_scenario(kScenarioDir + "/happy_path.json");
  s.expect = {{"orders", {{{"state", "failed"}}}}, {"aa_decryptions", 3}};
  auto run = run_scenario(s, nullptr);
  ASSERT_EQ(run.expectations.size(), 2u);
  EXPECT_FALSE(run.expectations[0].pass);
  EXPECT_FALSE(run.expectations[1].pass);
  EXPECT_FALSE(run.ok());
  EXPECT_NE(run.summary().find("FAIL"), std::string::npos);
}

TEST(Expectations, UnstatedFieldsAreNotCompared) {
  auto s = load_scenario(kScenarioDir + "/replay_attack.json");
  s.expect = {{"orders", {json::object()}}};
  auto run = run_scenario(s, nullptr);
  EXPECT_TRUE(all_pass(run.expectations));
}

TEST(RandomScenario, DeterministicAndRoundTrips) {
  auto a = random_scenario(11, Mode::kFcGuard, 4, 6);
  auto b = random_scenario(11, Mode::kFcGuard, 4, 6);
  EXPECT_EQ(scenario_to_json(a), scenario_to_json(b));
  EXPECT_NE(scenario_to_json(a), scenario_to_json(random_scenario(12, Mode::kFcGuard, 4, 6)));
  EXPECT_EQ(scenario_to_json(parties::scenario_from_json(scenario_to_json(a))), scenario_to_json(a));
  std::set<std::int64_t> ssns;
  for (const auto& u : a.users) ssns.insert(u.pii.ssn);
  EXPECT_EQ(ssns.size(), a.users.size());
  EXPECT_EQ(a.orders.size(), 6u);
}

TEST(RandomScenario, PropertiesHoldInBothModes) {
  for (auto mode : {Mode::kFcGuard, Mode::kBaseline}) {
    auto s = random_scenario(21, mode, 3, 4);
    parties::Simulation sim(s);
    auto rep = sim.run();
    EXPECT_TRUE(rep.ok()) << parties::to_string(mode);
  }
}

TEST(Bench, ReferenceFigures) {
  EXPECT_DOUBLE_EQ(*reference_ms(Mode::kFcGuard, "identity_verification"), 464.87);
  EXPECT_DOUBLE_EQ(*reference_ms(Mode::kFcGuard, "audit"), 362.52);
  EXPECT_DOUBLE_EQ(*reference_ms(Mode::kBaseline, "crypto_transfer"), 170.01);
  EXPECT_FALSE(reference_ms(Mode::kFcGuard, "bank_onboarding").has_value());
}

TEST(Bench, RatioAndGapArithmetic) {
  BenchmarkReport r;
  for (auto* m : {&r.fcguard, &r.baseline}) {
    for (const auto& p : bench_phases()) m->phases.push_back({p});
  }
  auto set = [](ModeReport& m, const std::string& p, double v) {
    for (auto& s : m.phases) {
      if (s.phase == p) s.median_ms = v;
    }
  };
  set(r.fcguard, "identity_verification", 300);
  set(r.baseline, "identity_verification", 3);
  set(r.fcguard, "bank_transfer", 1);
  set(r.fcguard, "crypto_transfer", 179);
  set(r.baseline, "bank_transfer", 1);
  set(r.baseline, "crypto_transfer", 161);
  EXPECT_DOUBLE_EQ(r.identity_ratio(), 100.0);
  EXPECT_DOUBLE_EQ(r.transfer_gap(), 18.0 / 180.0);
}

TEST(Bench, ToyRunShapesAndModeledLatency) {
  EXPECT_THROW(run_bench(crypto::Profile::kToy, 4, 1, nullptr), Error);
  auto r = run_bench(crypto::Profile::kToy, 5, 1, nullptr);
  for (const auto* m : {&r.fcguard, &r.baseline}) {
    ASSERT_EQ(m->phases.size(), bench_phases().size());
    for (const auto& p : m->phases) EXPECT_EQ(p.samples_ms.size(), 5u) << p.phase;
    EXPECT_NEAR(m->phase("crypto_transfer").modeled_ms, 170.0, 1e-9);
    EXPECT_NEAR(m->phase("bank_transfer").modeled_ms, 0.9, 1e-9);
  }
  EXPECT_EQ(r.baseline.phase("identity_verification").modexp, 0u);
  EXPECT_GT(r.fcguard.phase("identity_verification").modexp, 0u);
  EXPECT_GT(r.identity_ratio(), 1.0);
  auto table = r.table();
  EXPECT_NE(table.find("464.87"), std::string::npos);
  EXPECT_NE(table.find("156.95"), std::string::npos);
  auto j = r.to_json();
  EXPECT_EQ(j.at("fcguard").at("phases").at("audit").at("reference_ms"), 362.52);
}

TEST(Security, MutationMatrixRejectsEverything) {
  auto r = run_mutation_matrix(2);
  EXPECT_GE(r.cases, 50u);
  EXPECT_EQ(r.false_accepts, 0u);
  for (const char* family : {"credential-signature", "presentation", "equality-splice",
                             "encryption-elgamal", "encryption-paillier", "predicate"}) {
    EXPECT_GT(r.per_family[family], 0u) << family;
  }
}

TEST(Security, UnlinkabilityCountsSmallBatch) {
  auto r = run_unlinkability(3, 10);
  EXPECT_EQ(r.presentations, 10u);
  EXPECT_EQ(r.shared_presentation_values, 0u);
  EXPECT_EQ(r.repeated_ciphertexts, 0u);
}

TEST(Security, HygieneBatchRotatesPool) {
  auto r = run_hygiene_batch(4, 10, 2, 2);
  EXPECT_EQ(r.orders, 10u);
  EXPECT_EQ(r.address_repeats, 0u);
  EXPECT_GE(r.epochs, 5u);
  EXPECT_GE(r.pool_addresses, 2u);
  EXPECT_EQ(r.delays_out_of_range, 0u);
}

TEST(Security, SuiteNegativeControlFails) {
  SuiteOptions opt;
  opt.scenarios = 2;
  opt.baseline_blindness = true;
  auto lines = run_security_suite(opt);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0].property, "platform-blindness");
  EXPECT_FALSE(lines[0].pass);
  opt.baseline_blindness = false;
  for (const auto& l : run_security_suite(opt)) EXPECT_TRUE(l.pass) << l.property << ": " << l.detail;
}

}  // namespace
}  // namespace fcguard::harness
