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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcguard/ledger/chain.hpp"
#include "fcguard/parties/network.hpp"
#include "fcguard/parties/parties.hpp"

namespace fcguard::parties {

enum class Mode { kFcGuard, kBaseline };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

struct SimConfig {
  std::int64_t max_delay_s = 600;
  std::uint32_t rotation_epoch = 10;
  std::uint32_t pool_addresses_per_epoch = 3;
  std::int64_t rate = 10;
  std::int64_t today = 20250101;
  unsigned min_age = 0;
  double bank_latency_ms = 0.9;
  double chain_latency_ms = 170.0;
};

struct BankSpec {
  std::string name;
  std::vector<AccountRecord> accounts;
};

struct PlatformSpec {
  std::string bank;
  std::int64_t account = 0;
  std::int64_t treasury = 1'000'000;  // crypto units at genesis
};

struct UserSpec {
  std::string id;
  PiiRecord pii;
  std::string bank;
  std::int64_t account = 0;
  std::optional<std::int64_t> bank_ssn;  // what the bank has on file, if different
  std::string self_report = "honest";    // honest | wrong | none
  bool in_ssa = true;
  bool register_user = true;
};

// attack: none | replay_stolen | replay_stale | wrong_definition
struct OrderSpec {
  std::string user;
  std::string asset = "BTC";
  std::int64_t crypto_amount = 0;
  std::vector<std::string> addresses;  // explicit; otherwise address_count fresh ones
  std::size_t address_count = 1;
  std::string attack = "none";
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  crypto::Profile profile = crypto::Profile::kToy;
  Mode mode = Mode::kFcGuard;
  std::string key_file;  // CL issuer keys, required for profile "paper"
  SimConfig config;
  std::vector<BankSpec> banks;
  PlatformSpec platform;
  std::vector<UserSpec> users;
  std::vector<OrderSpec> orders;
  json expect = json::object();
};

// Throws Error(kParseError) naming the offending field.
Scenario scenario_from_json(const json& j);
json scenario_to_json(const Scenario& s);

// Issuer keys: slot 0 is the platform, slot 1+i the i-th bank.
struct KeyMaterial {
  crypto::Profile profile = crypto::Profile::kToy;
  std::vector<crypto::ClIssuerKeyPair> cl_keys;
};

KeyMaterial generate_key_material(crypto::Profile profile, std::size_t count, std::uint64_t seed);
void to_json(json& j, const KeyMaterial& k);
void from_json(const json& j, KeyMaterial& k);
KeyMaterial load_key_material(const std::filesystem::path& path);
void save_key_material(const std::filesystem::path& path, const KeyMaterial& keys);

struct RegistrationOutcome {
  std::string user;
  bool ok = false;
};

struct OrderOutcome {
  std::string order_id;
  std::string user;
  std::string client;  // who drove the session
  std::string attack;
  std::string state;
  std::string cause;
  std::int64_t crypto_amount = 0;
  std::int64_t fiat_amount = 0;
  std::vector<std::string> addresses;
};

struct PhaseSample {
  std::string phase;
  std::string subject;
  double measured_ms = 0;
  double modeled_ms = 0;
  std::uint64_t modexp = 0;
  double total_ms() const { return measured_ms + modeled_ms; }
};

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SimulationReport {
  std::string scenario;
  Mode mode = Mode::kFcGuard;
  std::vector<RegistrationOutcome> registrations;
  std::vector<OrderOutcome> orders;
  std::vector<AuditOutcome> audit;
  std::uint64_t aa_decryptions = 0;
  std::vector<PropertyResult> properties;
  bool ok() const;
  json to_json() const;
};

// Phases the platform-blindness scan covers. Registration is left out:
// the platform sees PII there by design.
const std::set<std::string, std::less<>>& exchange_phases();

class Simulation {
 public:
  // keys may be null for the toy profile; fresh ones are then derived from the seed.
  Simulation(const Scenario& scenario, const KeyMaterial* keys = nullptr);
  ~Simulation();

  void onboard_all();
  bool onboard_bank_customer(User& u);
  bool register_user(User& u);
  OrderOutcome run_order(const OrderSpec& spec);
  void settle_chain() { queue_.drain(); }
  std::vector<AuditOutcome> run_audit();
  SimulationReport run();

  std::vector<PropertyResult> check_properties() const;
  // Occurrences of any user's SSN or account number in what the platform
  // received during exchange and audit phases.
  std::size_t platform_taint_hits() const;
  std::size_t bank_address_hits() const;
  std::size_t link_secret_hits() const;

  const Scenario& scenario() const { return scenario_; }
  const ledger::Registry& registry() const { return registry_; }
  ledger::Registry& registry() { return registry_; }
  const ledger::Chain& chain() const { return chain_; }
  const Network& network() const { return net_; }
  const EventQueue& clock() const { return queue_; }
  Platform& platform() { return *platform_; }
  const Platform& platform() const { return *platform_; }
  AuditingAuthority& auditor() { return *aa_; }
  Bank& bank(const std::string& name);
  const std::map<std::string, std::unique_ptr<Bank>>& banks() const { return banks_; }
  User& user(const std::string& id);
  const std::map<std::string, std::unique_ptr<User>>& users() const { return users_; }
  const std::vector<OrderOutcome>& outcomes() const { return outcomes_; }
  const std::vector<RegistrationOutcome>& registrations() const { return registrations_; }
  const std::vector<PhaseSample>& samples() const { return samples_; }
  // Every crypto transfer the platform queued, with release times.
  const std::vector<PendingTransfer>& scheduled() const { return scheduled_; }
  std::int64_t initial_fiat() const { return initial_fiat_; }
  std::int64_t fiat_total() const;
  // Crypto that reached each order's user addresses.
  std::int64_t delivered(const std::string& order_id) const;

  std::string platform_definition_id() const;
  static std::string bank_definition_id(const std::string& bank);
  static constexpr std::string_view kAdversary = "adversary";
  static constexpr std::string_view kAuditorKeyId = "aa-enc";

 private:
  class Phase;
  friend class Phase;

  OrderOutcome run_fcguard_order(const OrderSpec& spec, OrderOutcome out);
  OrderOutcome run_baseline_order(const OrderSpec& spec, OrderOutcome out);
  void settle_and_send(const std::string& order_id, const std::string& bank_name,
                       const std::string& client, bool pooled);
  void report(const std::string& order_id, const std::string& client, User* u);
  void refresh(OrderOutcome& out);

  Scenario scenario_;
  crypto::Rng rng_;
  crypto::Rng platform_rng_;
  crypto::Rng adversary_rng_;
  EventQueue queue_;
  Network net_;
  ledger::Registry registry_;
  ledger::Chain chain_;
  Ssa ssa_;
  std::unique_ptr<AuditingAuthority> aa_;
  std::unique_ptr<Platform> platform_;
  std::map<std::string, std::unique_ptr<Bank>> banks_;
  std::map<std::string, crypto::Rng> bank_rngs_;
  std::map<std::string, std::unique_ptr<User>> users_;
  std::map<std::string, std::int64_t> pending_chunks_;
  std::vector<RegistrationOutcome> registrations_;
  std::vector<OrderOutcome> outcomes_;
  std::map<std::string, std::int64_t> delivered_;
  std::vector<PendingTransfer> scheduled_;
  std::vector<PhaseSample> samples_;
  std::int64_t initial_fiat_ = 0;
};

}  // namespace fcguard::parties
