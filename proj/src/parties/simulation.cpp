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

#include "fcguard/parties/simulation.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fcguard/crypto/hash.hpp"
#include "fcguard/error.hpp"
#include "fcguard/presentations/proofs.hpp"

namespace fcguard::parties {

using presentations::HolderSession;
using presentations::Presentation;
using presentations::PresentationBundle;

std::string_view to_string(Mode m) { return m == Mode::kFcGuard ? "fcguard" : "baseline"; }

Mode parse_mode(std::string_view name) {
  if (name == "fcguard") return Mode::kFcGuard;
  if (name == "baseline") return Mode::kBaseline;
  fail(ErrorCode::kParseError, "unknown mode: " + std::string(name));
}

// --- scenario JSON ----------------------------------------------------------

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::kParseError, where + ": expected an object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == k;
    if (!ok) fail(ErrorCode::kParseError, where + ": unknown field '" + k + "'");
  }
}

template <class T>
T req(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(ErrorCode::kParseError, where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::kParseError, where + "." + key + ": wrong type");
  }
}

template <class T>
T opt(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? req<T>(j, key, where) : fallback;
}

const std::set<std::string, std::less<>> kAttacks{"none", "replay_stolen", "replay_stale",
                                                  "wrong_definition"};
const std::set<std::string, std::less<>> kReports{"honest", "wrong", "none"};

}  // namespace

Scenario scenario_from_json(const json& j) {
  check_keys(j, {"name", "seed", "profile", "mode", "key_file", "config", "banks", "platform",
                 "users", "orders", "expect", "description"},
             "scenario");
  Scenario s;
  s.name = opt<std::string>(j, "name", s.name, "scenario");
  s.seed = opt<std::uint64_t>(j, "seed", s.seed, "scenario");
  try {
    s.profile = crypto::parse_profile(opt<std::string>(j, "profile", "toy", "scenario"));
  } catch (const Error& e) {
    fail(ErrorCode::kParseError, std::string("scenario.profile: ") + e.what());
  }
  s.mode = parse_mode(opt<std::string>(j, "mode", "fcguard", "scenario"));
  s.key_file = opt<std::string>(j, "key_file", "", "scenario");
  if (j.contains("config")) {
    const auto& c = j.at("config");
    const std::string w = "scenario.config";
    check_keys(c, {"max_delay_s", "rotation_epoch", "pool_addresses_per_epoch", "rate", "today",
                   "min_age", "bank_latency_ms", "chain_latency_ms"},
               w);
    auto& k = s.config;
    k.max_delay_s = opt(c, "max_delay_s", k.max_delay_s, w);
    k.rotation_epoch = opt(c, "rotation_epoch", k.rotation_epoch, w);
    k.pool_addresses_per_epoch = opt(c, "pool_addresses_per_epoch", k.pool_addresses_per_epoch, w);
    k.rate = opt(c, "rate", k.rate, w);
    k.today = opt(c, "today", k.today, w);
    k.min_age = opt(c, "min_age", k.min_age, w);
    k.bank_latency_ms = opt(c, "bank_latency_ms", k.bank_latency_ms, w);
    k.chain_latency_ms = opt(c, "chain_latency_ms", k.chain_latency_ms, w);
    if (k.max_delay_s < 0 || k.rotation_epoch == 0 || k.pool_addresses_per_epoch == 0 ||
        k.rate <= 0 || !valid_calendar_date(k.today) || k.bank_latency_ms < 0 ||
        k.chain_latency_ms < 0) {
      fail(ErrorCode::kParseError, w + ": value out of range");
    }
  }
  for (std::size_t i = 0; i < req<json>(j, "banks", "scenario").size(); ++i) {
    const auto& b = j.at("banks").at(i);
    const std::string w = "scenario.banks[" + std::to_string(i) + "]";
    check_keys(b, {"name", "accounts"}, w);
    BankSpec bank;
    bank.name = req<std::string>(b, "name", w);
    for (std::size_t a = 0; a < req<json>(b, "accounts", w).size(); ++a) {
      const auto& aj = b.at("accounts").at(a);
      const std::string wa = w + ".accounts[" + std::to_string(a) + "]";
      check_keys(aj, {"number", "owner_ssn", "balance", "phone"}, wa);
      AccountRecord acct;
      acct.number = req<std::int64_t>(aj, "number", wa);
      acct.owner_ssn = req<std::int64_t>(aj, "owner_ssn", wa);
      acct.balance = req<std::int64_t>(aj, "balance", wa);
      acct.phone = opt<std::string>(aj, "phone", "", wa);
      if (acct.number <= 0 || acct.balance < 0) fail(ErrorCode::kParseError, wa + ": value out of range");
      bank.accounts.push_back(std::move(acct));
    }
    s.banks.push_back(std::move(bank));
  }
  {
    const auto& p = req<json>(j, "platform", "scenario");
    const std::string w = "scenario.platform";
    check_keys(p, {"bank", "account", "treasury"}, w);
    s.platform.bank = req<std::string>(p, "bank", w);
    s.platform.account = req<std::int64_t>(p, "account", w);
    s.platform.treasury = opt(p, "treasury", s.platform.treasury, w);
    if (s.platform.treasury < 0) fail(ErrorCode::kParseError, w + ".treasury: negative");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < req<json>(j, "users", "scenario").size(); ++i) {
    const auto& u = j.at("users").at(i);
    const std::string w = "scenario.users[" + std::to_string(i) + "]";
    check_keys(u, {"id", "name", "birthday", "ssn", "bank", "account", "bank_ssn", "self_report",
                   "in_ssa", "register"},
               w);
    UserSpec user;
    user.id = req<std::string>(u, "id", w);
    user.pii.name = req<std::string>(u, "name", w);
    user.pii.birthday = req<std::int64_t>(u, "birthday", w);
    user.pii.ssn = req<std::int64_t>(u, "ssn", w);
    user.bank = req<std::string>(u, "bank", w);
    user.account = req<std::int64_t>(u, "account", w);
    if (u.contains("bank_ssn")) user.bank_ssn = req<std::int64_t>(u, "bank_ssn", w);
    user.self_report = opt<std::string>(u, "self_report", "honest", w);
    user.in_ssa = opt(u, "in_ssa", true, w);
    user.register_user = opt(u, "register", true, w);
    if (!kReports.contains(user.self_report)) fail(ErrorCode::kParseError, w + ".self_report: unknown value");
    if (!ids.insert(user.id).second || user.id == kPlatformName || user.id == kSsaName ||
        user.id == kAuditorName || user.id == Simulation::kAdversary) {
      fail(ErrorCode::kParseError, w + ".id: duplicate or reserved");
    }
    s.users.push_back(std::move(user));
  }
  for (std::size_t i = 0; i < req<json>(j, "orders", "scenario").size(); ++i) {
    const auto& o = j.at("orders").at(i);
    const std::string w = "scenario.orders[" + std::to_string(i) + "]";
    check_keys(o, {"user", "asset", "crypto_amount", "addresses", "address_count", "attack"}, w);
    OrderSpec order;
    order.user = req<std::string>(o, "user", w);
    order.asset = opt<std::string>(o, "asset", order.asset, w);
    order.crypto_amount = req<std::int64_t>(o, "crypto_amount", w);
    order.addresses = opt<std::vector<std::string>>(o, "addresses", {}, w);
    order.address_count = opt<std::size_t>(o, "address_count", 1, w);
    order.attack = opt<std::string>(o, "attack", "none", w);
    if (!ids.contains(order.user)) fail(ErrorCode::kParseError, w + ".user: unknown user");
    if (!kAttacks.contains(order.attack)) fail(ErrorCode::kParseError, w + ".attack: unknown value");
    if (order.address_count == 0 || order.address_count > 64) {
      fail(ErrorCode::kParseError, w + ".address_count: out of range");
    }
    s.orders.push_back(std::move(order));
  }
  if (j.contains("expect")) {
    s.expect = j.at("expect");
    if (!s.expect.is_object()) fail(ErrorCode::kParseError, "scenario.expect: expected an object");
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json banks = json::array();
  for (const auto& b : s.banks) {
    json accounts = json::array();
    for (const auto& a : b.accounts) {
      json aj{{"number", a.number}, {"owner_ssn", a.owner_ssn}, {"balance", a.balance}};
      if (!a.phone.empty()) aj["phone"] = a.phone;
      accounts.push_back(aj);
    }
    banks.push_back({{"name", b.name}, {"accounts", accounts}});
  }
  json users = json::array();
  for (const auto& u : s.users) {
    json uj{{"id", u.id},           {"name", u.pii.name}, {"birthday", u.pii.birthday},
            {"ssn", u.pii.ssn},     {"bank", u.bank},     {"account", u.account},
            {"self_report", u.self_report}, {"in_ssa", u.in_ssa}, {"register", u.register_user}};
    if (u.bank_ssn) uj["bank_ssn"] = *u.bank_ssn;
    users.push_back(uj);
  }
  json orders = json::array();
  for (const auto& o : s.orders) {
    json oj{{"user", o.user}, {"asset", o.asset}, {"crypto_amount", o.crypto_amount},
            {"address_count", o.address_count}, {"attack", o.attack}};
    if (!o.addresses.empty()) oj["addresses"] = o.addresses;
    orders.push_back(oj);
  }
  const auto& c = s.config;
  json j{{"name", s.name},
         {"seed", s.seed},
         {"profile", crypto::profile(s.profile).name()},
         {"mode", to_string(s.mode)},
         {"config",
          {{"max_delay_s", c.max_delay_s},
           {"rotation_epoch", c.rotation_epoch},
           {"pool_addresses_per_epoch", c.pool_addresses_per_epoch},
           {"rate", c.rate},
           {"today", c.today},
           {"min_age", c.min_age},
           {"bank_latency_ms", c.bank_latency_ms},
           {"chain_latency_ms", c.chain_latency_ms}}},
         {"banks", banks},
         {"platform",
          {{"bank", s.platform.bank},
           {"account", s.platform.account},
           {"treasury", s.platform.treasury}}},
         {"users", users},
         {"orders", orders},
         {"expect", s.expect}};
  if (!s.key_file.empty()) j["key_file"] = s.key_file;
  return j;
}

// --- key material -----------------------------------------------------------

KeyMaterial generate_key_material(crypto::Profile profile, std::size_t count,
                                  std::uint64_t seed) {
  crypto::Rng rng(seed);
  auto key_rng = rng.fork("cl-issuer-keys");
  KeyMaterial out;
  out.profile = profile;
  const auto& params = crypto::profile(profile);
  // Four slots: link secret plus three attributes, for either schema.
  for (std::size_t i = 0; i < count; ++i) out.cl_keys.push_back(crypto::cl_keygen(4, params, key_rng));
  return out;
}

void to_json(json& j, const KeyMaterial& k) {
  j = json{{"format", "fcguard-keys/1"},
           {"profile", crypto::profile(k.profile).name()},
           {"cl_keys", k.cl_keys}};
}

void from_json(const json& j, KeyMaterial& k) {
  if (j.value("format", std::string()) != "fcguard-keys/1") {
    fail(ErrorCode::kParseError, "not an fcguard key file");
  }
  k.profile = crypto::parse_profile(j.at("profile").get<std::string>());
  k.cl_keys = j.at("cl_keys").get<std::vector<crypto::ClIssuerKeyPair>>();
  for (const auto& key : k.cl_keys) {
    enforce(key.profile == k.profile && crypto::cl_key_invariants_hold(key),
            ErrorCode::kParseError, "key file holds an inconsistent issuer key");
  }
}

KeyMaterial load_key_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  enforce(static_cast<bool>(in), ErrorCode::kIo, "cannot read " + path.string());
  try {
    return json::parse(in).get<KeyMaterial>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void save_key_material(const std::filesystem::path& path, const KeyMaterial& keys) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  enforce(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  out << json(keys).dump(1) << '\n';
}

// --- report -----------------------------------------------------------------

bool SimulationReport::ok() const {
  for (const auto& p : properties) {
    if (!p.pass) return false;
  }
  return true;
}

json SimulationReport::to_json() const {
  json regs = json::array();
  for (const auto& r : registrations) regs.push_back({{"user", r.user}, {"ok", r.ok}});
  json orders_j = json::array();
  for (const auto& o : orders) {
    json oj{{"order_id", o.order_id}, {"user", o.user},       {"client", o.client},
            {"attack", o.attack},     {"state", o.state},     {"crypto_amount", o.crypto_amount},
            {"fiat_amount", o.fiat_amount}, {"addresses", o.addresses}};
    if (!o.cause.empty()) oj["cause"] = o.cause;
    orders_j.push_back(oj);
  }
  json props = json::array();
  for (const auto& p : properties) {
    props.push_back({{"name", p.name}, {"pass", p.pass}, {"detail", p.detail}});
  }
  return json{{"scenario", scenario},
              {"mode", parties::to_string(mode)},
              {"registrations", regs},
              {"orders", orders_j},
              {"audit", audit},
              {"aa_decryptions", aa_decryptions},
              {"properties", props},
              {"ok", ok()}};
}

const std::set<std::string, std::less<>>& exchange_phases() {
  static const std::set<std::string, std::less<>> kPhases{
      "identity_verification", "bank_interaction", "bank_transfer", "crypto_transfer", "audit"};
  return kPhases;
}

// --- simulation -------------------------------------------------------------

class Simulation::Phase {
 public:
  Phase(Simulation& sim, std::string phase, std::string subject)
      : sim_(sim), start_(std::chrono::steady_clock::now()),
        modexp_(crypto::op_counters().modexp) {
    sample_.phase = std::move(phase);
    sample_.subject = std::move(subject);
  }
  ~Phase() {
    std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start_;
    sample_.measured_ms = d.count();
    sample_.modexp = crypto::op_counters().modexp - modexp_;
    sim_.samples_.push_back(std::move(sample_));
  }
  Phase(const Phase&) = delete;
  Phase& operator=(const Phase&) = delete;

  void model(double ms) { sample_.modeled_ms += ms; }
  const std::string& name() const { return sample_.phase; }

 private:
  Simulation& sim_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t modexp_;
  PhaseSample sample_;
};

namespace {

std::vector<PiiRecord> ssa_records(const Scenario& s) {
  std::vector<PiiRecord> out;
  for (const auto& u : s.users) {
    if (u.in_ssa) out.push_back(u.pii);
  }
  return out;
}

std::int64_t to_us(double ms) { return std::llround(ms * 1000.0); }

const std::string kPlatform(kPlatformName);
const std::string kSsa(kSsaName);
const std::string kAuditor(kAuditorName);

}  // namespace

Simulation::Simulation(const Scenario& scenario, const KeyMaterial* keys)
    : scenario_(scenario),
      rng_(scenario.seed),
      platform_rng_(rng_.fork("platform")),
      adversary_rng_(rng_.fork("adversary")),
      net_(queue_),
      ssa_(ssa_records(scenario)) {
  const auto& params = crypto::profile(scenario_.profile);
  std::size_t need = 1 + scenario_.banks.size();
  KeyMaterial local;
  if (!keys) {
    enforce(scenario_.profile == crypto::Profile::kToy, ErrorCode::kInvalidArgument,
            "profile 'paper' needs a key file (fcguard keygen --profile paper)");
    local = generate_key_material(crypto::Profile::kToy, need, scenario_.seed);
    keys = &local;
  }
  enforce(keys->profile == scenario_.profile, ErrorCode::kInvalidArgument,
          "key file profile does not match the scenario");
  enforce(keys->cl_keys.size() >= need, ErrorCode::kInvalidArgument,
          "key file holds " + std::to_string(keys->cl_keys.size()) + " issuer keys, need " +
              std::to_string(need));

  auto platform_issuer = credentials::make_issuer(credentials::platform_schema(),
                                                  platform_definition_id(), keys->cl_keys[0]);
  credentials::publish_definition(registry_, platform_issuer.schema, platform_issuer.definition);

  auto group_rng = rng_.fork("commitment-group");
  auto group = crypto::group_for_profile(params, group_rng);
  presentations::publish_commitment_key(registry_, crypto::group_commitment_key(group));

  auto aa_rng = rng_.fork("auditor");
  aa_ = std::make_unique<AuditingAuthority>(std::string(kAuditorKeyId),
                                            crypto::elgamal_keygen(group, aa_rng));
  publish_encryption_key(registry_, aa_->public_key());

  std::map<std::int64_t, std::string> owner_of;
  for (const auto& u : scenario_.users) owner_of.emplace(u.account, u.id);
  for (std::size_t i = 0; i < scenario_.banks.size(); ++i) {
    const auto& spec = scenario_.banks[i];
    enforce(!banks_.contains(spec.name), ErrorCode::kDuplicateId, "duplicate bank " + spec.name);
    auto brng = rng_.fork("bank:" + spec.name);
    auto enc = crypto::paillier_keygen(params.group_bits, brng);
    auto issuer = credentials::make_issuer(credentials::bank_schema(),
                                           bank_definition_id(spec.name), keys->cl_keys[1 + i]);
    credentials::publish_definition(registry_, issuer.schema, issuer.definition);
    auto accounts = spec.accounts;
    for (auto& a : accounts) {
      if (a.phone.empty()) {
        auto it = owner_of.find(a.number);
        a.phone = it == owner_of.end() ? "unreachable" : it->second;
      }
    }
    auto bank = std::make_unique<Bank>(spec.name, std::move(issuer), std::move(enc),
                                       std::move(accounts));
    publish_encryption_key(registry_, bank->public_key());
    banks_.emplace(spec.name, std::move(bank));
    bank_rngs_.emplace(spec.name, std::move(brng));
  }

  PlatformConfig pc;
  pc.rate = scenario_.config.rate;
  pc.today = scenario_.config.today;
  pc.min_age = scenario_.config.min_age;
  pc.bank = scenario_.platform.bank;
  pc.account = scenario_.platform.account;
  auto pb = banks_.find(pc.bank);
  enforce(pb != banks_.end() && pb->second->accounts().contains(pc.account),
          ErrorCode::kInvalidArgument, "platform bank account does not exist");
  PoolConfig pool;
  pool.max_delay_us = scenario_.config.max_delay_s * 1'000'000;
  pool.rotation_epoch = scenario_.config.rotation_epoch;
  pool.addresses_per_epoch = scenario_.config.pool_addresses_per_epoch;
  platform_ = std::make_unique<Platform>(std::move(platform_issuer), pc,
                                         AddressPool(pool, "pool"));
  if (scenario_.platform.treasury > 0) chain_.genesis(pc.treasury, scenario_.platform.treasury);

  for (const auto& spec : scenario_.users) {
    auto u = std::make_unique<User>(spec.id, spec.pii, rng_.fork("user:" + spec.id));
    u->bank = spec.bank;
    u->account = spec.account;
    u->bank_ssn = spec.bank_ssn.value_or(spec.pii.ssn);
    u->self_report = spec.self_report;
    users_.emplace(spec.id, std::move(u));
  }
  initial_fiat_ = fiat_total();
}

Simulation::~Simulation() = default;

std::string Simulation::platform_definition_id() const { return "fcguard.platform.def"; }

std::string Simulation::bank_definition_id(const std::string& bank) {
  return "fcguard.bank.def:" + bank;
}

Bank& Simulation::bank(const std::string& name) {
  auto it = banks_.find(name);
  enforce(it != banks_.end(), ErrorCode::kUnknownId, "unknown bank " + name);
  return *it->second;
}

User& Simulation::user(const std::string& id) {
  auto it = users_.find(id);
  enforce(it != users_.end(), ErrorCode::kUnknownId, "unknown user " + id);
  return *it->second;
}

std::int64_t Simulation::fiat_total() const {
  std::int64_t sum = 0;
  for (const auto& [_, b] : banks_) sum += b->total_balance();
  return sum;
}

std::int64_t Simulation::delivered(const std::string& order_id) const {
  auto it = delivered_.find(order_id);
  return it == delivered_.end() ? 0 : it->second;
}

bool Simulation::onboard_bank_customer(User& u) {
  auto it = banks_.find(u.bank);
  if (it == banks_.end()) return false;
  Bank& bank = *it->second;
  Phase ph(*this, "bank_onboarding", u.id);
  const std::string phase = ph.name();
  net_.send(u.id, bank.name(), "account_hello", phase, {{"account", u.account}});
  auto nonce = random_nonce(bank_rngs_.at(bank.name()));
  const auto& nb = net_.send(bank.name(), u.id, "issuance_nonce", phase,
                             {{"nonce", nonce}, {"definition_id", bank.issuer().definition.id}});
  auto got = json::parse(nb);
  auto pending = credentials::create_credential_request(
      registry_, got.at("definition_id").get<std::string>(), u.wallet.link_secret(),
      got.at("nonce").get<std::string>(), u.rng);
  const auto& rb = net_.send(u.id, bank.name(), "account_credential_request", phase,
                             {{"account", u.account}, {"ssn", u.bank_ssn}, {"request", pending.request}});
  try {
    auto r = json::parse(rb);
    auto cred = bank.issue_account_credential(
        r.at("request").get<credentials::CredentialRequest>(), nonce,
        r.at("account").get<std::int64_t>(), r.at("ssn").get<std::int64_t>(),
        bank_rngs_.at(bank.name()));
    const auto& cb = net_.send(bank.name(), u.id, "credential", phase, cred);
    credentials::holder_verify_and_store(u.wallet, registry_,
                                         json::parse(cb).get<credentials::Credential>(), pending);
    return true;
  } catch (const Error&) {
    net_.send(bank.name(), u.id, "onboarding_rejected", phase, json::object());
    return false;
  }
}

bool Simulation::register_user(User& u) {
  Phase ph(*this, "registration", u.id);
  const std::string phase = ph.name();
  bool baseline = scenario_.mode == Mode::kBaseline;
  auto ssa_check = [&](const PiiRecord& pii) {
    const auto& vb = net_.send(kPlatform, kSsa, "ssa_verify", phase, {{"pii", pii}});
    bool ok = ssa_.verify(json::parse(vb).at("pii").get<PiiRecord>());
    const auto& ab = net_.send(kSsa, kPlatform, "ssa_verdict", phase, {{"ok", ok}});
    return json::parse(ab).at("ok").get<bool>();
  };
  if (baseline) {
    const auto& b = net_.send(u.id, kPlatform, "baseline_register", phase,
                              {{"user_id", u.id}, {"pii", u.pii}});
    auto msg = json::parse(b);
    auto pii = msg.at("pii").get<PiiRecord>();
    if (!ssa_check(pii)) {
      net_.send(kPlatform, u.id, "registration_rejected", phase, json::object());
      return false;
    }
    auto token = platform_->baseline_register(msg.at("user_id").get<std::string>(), pii,
                                              platform_rng_);
    const auto& tb = net_.send(kPlatform, u.id, "login_token", phase, {{"token", token}});
    u.baseline_token = json::parse(tb).at("token").get<std::string>();
    u.registered = true;
    return true;
  }
  net_.send(u.id, kPlatform, "register_hello", phase, {{"user_id", u.id}});
  auto nonce = random_nonce(platform_rng_);
  const auto& nb = net_.send(kPlatform, u.id, "issuance_nonce", phase,
                             {{"nonce", nonce}, {"definition_id", platform_definition_id()}});
  auto got = json::parse(nb);
  auto pending = credentials::create_credential_request(
      registry_, got.at("definition_id").get<std::string>(), u.wallet.link_secret(),
      got.at("nonce").get<std::string>(), u.rng);
  const auto& rb = net_.send(u.id, kPlatform, "registration_request", phase,
                             {{"pii", u.pii}, {"request", pending.request}});
  auto msg = json::parse(rb);
  auto pii = msg.at("pii").get<PiiRecord>();
  if (!ssa_check(pii)) {
    net_.send(kPlatform, u.id, "registration_rejected", phase, json::object());
    return false;
  }
  try {
    auto cred = platform_->register_user(
        pii, msg.at("request").get<credentials::CredentialRequest>(), nonce, platform_rng_);
    const auto& cb = net_.send(kPlatform, u.id, "credential", phase, cred);
    credentials::holder_verify_and_store(u.wallet, registry_,
                                         json::parse(cb).get<credentials::Credential>(), pending);
  } catch (const Error&) {
    net_.send(kPlatform, u.id, "registration_rejected", phase, json::object());
    return false;
  }
  u.registered = true;
  return true;
}

void Simulation::onboard_all() {
  for (const auto& spec : scenario_.users) {
    User& u = user(spec.id);
    if (scenario_.mode == Mode::kFcGuard) onboard_bank_customer(u);
    if (spec.register_user) registrations_.push_back({u.id, register_user(u)});
  }
}

void Simulation::refresh(OrderOutcome& out) {
  if (out.order_id.empty()) return;
  const auto& o = platform_->order(out.order_id);
  out.state = std::string(to_string(o.state));
  out.cause = o.failure;
  out.fiat_amount = o.fiat_amount;
}

OrderOutcome Simulation::run_order(const OrderSpec& spec) {
  // A simulated second between orders; lets due transfers land.
  queue_.advance(1'000'000);
  OrderOutcome out;
  User& u = user(spec.user);
  bool adversarial = spec.attack == "replay_stolen" || spec.attack == "replay_stale";
  out.user = u.id;
  out.attack = spec.attack;
  out.client = adversarial ? std::string(kAdversary) : u.id;
  out.crypto_amount = spec.crypto_amount;
  if (!spec.addresses.empty()) {
    out.addresses = spec.addresses;
  } else if (adversarial) {
    for (std::size_t i = 0; i < spec.address_count; ++i) {
      out.addresses.push_back(random_address(adversary_rng_));
    }
  } else {
    out.addresses = u.fresh_addresses(spec.address_count);
  }
  out = scenario_.mode == Mode::kFcGuard ? run_fcguard_order(spec, std::move(out))
                                         : run_baseline_order(spec, std::move(out));
  outcomes_.push_back(out);
  return out;
}

OrderOutcome Simulation::run_fcguard_order(const OrderSpec& spec, OrderOutcome out) {
  User& u = user(spec.user);
  const std::string client = out.client;
  const bool stale = spec.attack == "replay_stale";
  const bool wrong_def = spec.attack == "wrong_definition";
  std::string nonce;
  std::unique_ptr<HolderSession> session;
  std::optional<Presentation> vp_pu;

  {
    Phase ph(*this, "identity_verification", u.id);
    const std::string phase = ph.name();
    json request{{"asset", spec.asset},
                 {"crypto_amount", spec.crypto_amount},
                 {"addresses", out.addresses}};
    const auto& rb = net_.send(client, kPlatform, "exchange_request", phase, request);
    auto quote = platform_->handle_exchange_request(json::parse(rb), queue_.now_us(),
                                                    platform_rng_);
    auto q = json::parse(net_.send(kPlatform, client, "order_quote", phase, quote));
    out.order_id = q.at("order_id").get<std::string>();
    if (q.at("status") == "failed") {
      refresh(out);
      return out;
    }
    nonce = q.at("nonce").get<std::string>();

    json bundle_json = json::object();
    if (stale) {
      // The thief resends bytes captured from the victim's earlier exchange.
      if (u.last_identity_bundle) bundle_json = *u.last_identity_bundle;
    } else {
      // In the stolen-session attack the victim's wallet answers the
      // thief's nonce; otherwise the user answers their own.
      session = std::make_unique<HolderSession>(u.wallet, registry_, nonce, u.rng);
      PresentationBundle b;
      b.nonce = nonce;
      bool age = q.contains("age_threshold");
      try {
        std::string def = wrong_def ? bank_definition_id(u.bank) : platform_definition_id();
        std::vector<std::string> commit{"ssn"};
        if (age && !wrong_def) commit.push_back("birthday");
        vp_pu = session->present(def, {}, commit);
        b.presentations.push_back(*vp_pu);
        b.encryptions.push_back(session->prove_encryption(
            *vp_pu, "ssn", fetch_encryption_key(registry_, kAuditorKeyId)));
        if (age && !wrong_def) {
          try {
            b.predicates.push_back(session->prove_predicate_ge(
                *vp_pu, "birthday", crypto::Int(q.at("age_threshold").get<std::int64_t>())));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kProofRefused) throw;
          }
        }
      } catch (const Error&) {
        // No usable credential: whatever was built goes out and fails.
      }
      bundle_json = b;
      if (client == u.id) u.last_identity_bundle = bundle_json;
    }
    const auto& bb = net_.send(client, kPlatform, "identity_bundle", phase, bundle_json);
    bool ok = platform_->handle_identity_bundle(out.order_id, json::parse(bb), registry_,
                                                kAuditorKeyId, queue_.now_us());
    net_.send(kPlatform, client, "identity_result", phase,
              {{"order_id", out.order_id}, {"ok", ok}});
    if (!ok) {
      refresh(out);
      return out;
    }
  }

  std::string bank_name;
  {
    Phase ph(*this, "bank_interaction", out.order_id);
    const std::string phase = ph.name();
    json bundle_json = json::object();
    if (stale) {
      if (u.last_bank_bundle) bundle_json = *u.last_bank_bundle;
    } else {
      PresentationBundle b;
      b.nonce = nonce;
      try {
        auto vp_bu = session->present(bank_definition_id(u.bank), {"bank_name"},
                                      {"ssn", "account"});
        b.presentations.push_back(vp_bu);
        b.encryptions.push_back(session->prove_encryption(
            vp_bu, "account", fetch_encryption_key(registry_, "bank-enc:" + u.bank)));
        if (vp_pu) {
          try {
            b.equalities.push_back(session->prove_equality(*vp_pu, "ssn", vp_bu, "ssn"));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kProofRefused) throw;
          }
        }
      } catch (const Error&) {
      }
      bundle_json = b;
      if (client == u.id) u.last_bank_bundle = bundle_json;
    }
    const auto& bb = net_.send(client, kPlatform, "bank_bundle", phase, bundle_json);
    auto mpb = platform_->handle_bank_bundle(out.order_id, json::parse(bb), registry_,
                                             queue_.now_us(), &bank_name);
    if (!mpb || !banks_.contains(bank_name)) {
      if (mpb) platform_->transition(out.order_id, OrderState::kFailed, queue_.now_us(), "bank-unknown");
      net_.send(kPlatform, client, "order_failed", phase,
                {{"order_id", out.order_id}, {"cause", platform_->order(out.order_id).failure}});
      refresh(out);
      return out;
    }
    Bank& bank = *banks_.at(bank_name);
    const auto& mb = net_.send(kPlatform, bank.name(), "M_pb", phase, *mpb);
    Bank::MfaChallenge challenge;
    auto verdict = bank.handle_mpb(json::parse(mb), registry_, bank_rngs_.at(bank_name), &challenge);
    if (verdict.ok) {
      const auto& sb = net_.send(bank.name(), challenge.phone, "mfa_sms", phase,
                                 {{"order_id", out.order_id}, {"code", challenge.code}});
      // Only the phone's owner can read the code; anyone else guesses.
      std::string answer = challenge.phone == client ? json::parse(sb).at("code").get<std::string>()
                                                     : mfa_code(adversary_rng_);
      auto r = json::parse(net_.send(client, bank.name(), "mfa_response", phase,
                                     {{"order_id", out.order_id}, {"code", answer}}));
      verdict = bank.handle_mfa(r.at("order_id").get<std::string>(), r.at("code").get<std::string>());
    }
    const auto& vb = net_.send(bank.name(), kPlatform, "bank_verdict", phase,
                               {{"order_id", out.order_id}, {"ok", verdict.ok}, {"cause", verdict.cause}});
    platform_->handle_bank_verdict(out.order_id, json::parse(vb), queue_.now_us());
    if (platform_->order(out.order_id).state != OrderState::kBankVerified) {
      refresh(out);
      return out;
    }
  }

  settle_and_send(out.order_id, bank_name, client, true);
  report(out.order_id, client, client == u.id ? &u : nullptr);
  refresh(out);
  return out;
}

OrderOutcome Simulation::run_baseline_order(const OrderSpec& spec, OrderOutcome out) {
  User& u = user(spec.user);
  const std::string client = out.client;
  {
    Phase ph(*this, "identity_verification", u.id);
    const std::string phase = ph.name();
    // A thief replays the victim's login token; there is nothing else to check.
    json login{{"user_id", u.id},
               {"token", u.baseline_token},
               {"pii", u.pii},
               {"asset", spec.asset},
               {"crypto_amount", spec.crypto_amount},
               {"addresses", out.addresses}};
    const auto& lb = net_.send(client, kPlatform, "login", phase, login);
    auto quote = platform_->handle_baseline_login(json::parse(lb), queue_.now_us(), platform_rng_);
    auto q = json::parse(net_.send(kPlatform, client, "order_quote", phase, quote));
    out.order_id = q.at("order_id").get<std::string>();
    if (q.at("status") == "failed") {
      refresh(out);
      return out;
    }
  }
  std::string bank_name;
  {
    Phase ph(*this, "bank_interaction", out.order_id);
    const std::string phase = ph.name();
    const auto& db = net_.send(client, kPlatform, "bank_details", phase,
                               {{"order_id", out.order_id}, {"bank", u.bank}, {"account", u.account}});
    auto debit = platform_->handle_baseline_bank_details(out.order_id, json::parse(db),
                                                         queue_.now_us(), &bank_name);
    if (!debit) {
      refresh(out);
      return out;
    }
    if (!banks_.contains(bank_name)) {
      platform_->transition(out.order_id, OrderState::kFailed, queue_.now_us(), "bank-unknown");
      refresh(out);
      return out;
    }
    Bank& bank = *banks_.at(bank_name);
    const auto& ab = net_.send(kPlatform, bank.name(), "debit_authorization", phase, *debit);
    auto verdict = bank.handle_baseline_debit(json::parse(ab));
    const auto& vb = net_.send(bank.name(), kPlatform, "bank_verdict", phase,
                               {{"order_id", out.order_id}, {"ok", verdict.ok}, {"cause", verdict.cause}});
    platform_->handle_bank_verdict(out.order_id, json::parse(vb), queue_.now_us());
    if (platform_->order(out.order_id).state != OrderState::kBankVerified) {
      refresh(out);
      return out;
    }
  }
  settle_and_send(out.order_id, bank_name, client, false);
  report(out.order_id, client, client == u.id ? &u : nullptr);
  refresh(out);
  return out;
}

void Simulation::settle_and_send(const std::string& order_id, const std::string& bank_name,
                                 const std::string& client, bool pooled) {
  const auto& cfg = scenario_.config;
  const auto& treasury = platform_->config().treasury;
  {
    Phase ph(*this, "bank_transfer", order_id);
    const std::string phase = ph.name();
    const auto& o = platform_->order(order_id);
    // Refuse before any money moves if the platform cannot deliver.
    if (chain_.balance(treasury) - platform_->reserved() < o.crypto_amount) {
      platform_->transition(order_id, OrderState::kFailed, queue_.now_us(), "liquidity");
      return;
    }
    Bank& bank = *banks_.at(bank_name);
    const auto& sb = net_.send(kPlatform, bank.name(), "settle_request", phase,
                               {{"order_id", order_id}});
    queue_.advance(to_us(cfg.bank_latency_ms));
    ph.model(cfg.bank_latency_ms);
    json receipt;
    auto verdict = bank.settle(json::parse(sb).at("order_id").get<std::string>(),
                               queue_.now_us(), &receipt);
    if (verdict.ok) {
      banks_.at(platform_->config().bank)->credit(platform_->config().account, o.fiat_amount);
      const auto& ub = net_.send(bank.name(), client, "settlement_receipt", phase, receipt);
      if (auto it = users_.find(client); it != users_.end()) {
        it->second->receipts.push_back(json::parse(ub));
      }
    } else {
      receipt = json{{"status", "failed"}, {"order_id", order_id}, {"cause", verdict.cause}};
    }
    const auto& rb = net_.send(bank.name(), kPlatform, "settlement_receipt", phase, receipt);
    platform_->handle_receipt(order_id, json::parse(rb), queue_.now_us());
    if (o.state != OrderState::kFiatSettled) return;
  }
  {
    Phase ph(*this, "crypto_transfer", order_id);
    const std::string phase = ph.name();
    ph.model(cfg.chain_latency_ms);
    const auto& o = platform_->order(order_id);
    std::int64_t now = queue_.now_us();
    platform_->reserve(o.crypto_amount);
    std::vector<PendingTransfer> plan;
    if (pooled) {
      plan = platform_->pool().schedule(order_id, o.crypto_amount, o.user_addresses, now,
                                        platform_rng_);
    } else {
      plan.push_back({order_id, treasury, o.user_addresses.front(), o.crypto_amount, now, now});
    }
    pending_chunks_[order_id] = static_cast<std::int64_t>(plan.size());
    scheduled_.insert(scheduled_.end(), plan.begin(), plan.end());
    const std::int64_t latency = to_us(cfg.chain_latency_ms);
    for (const auto& t : plan) {
      queue_.at(t.release_us + latency, [this, t] {
        auto ms = queue_.now_us() / 1000;
        const auto& tr = platform_->config().treasury;
        if (t.from != tr) chain_.submit(tr, t.from, t.amount, ms);
        chain_.submit(t.from, t.to, t.amount, ms);
        platform_->release(t.amount);
        delivered_[t.order_id] += t.amount;
        if (--pending_chunks_[t.order_id] == 0) {
          platform_->transition(t.order_id, OrderState::kComplete, queue_.now_us());
        }
      });
    }
    platform_->transition(order_id, OrderState::kCryptoSent, now);
    net_.send(kPlatform, client, "transfer_notice", phase,
              {{"order_id", order_id}, {"chunks", plan.size()}});
  }
}

void Simulation::report(const std::string& order_id, const std::string& client, User* u) {
  const auto& o = platform_->order(order_id);
  if (o.state != OrderState::kCryptoSent && o.state != OrderState::kComplete) return;
  const std::string phase = "audit";
  auto record = platform_->make_record(order_id, queue_.now_us());
  const auto& rb = net_.send(kPlatform, kAuditor, "exchange_record", phase, record);
  aa_->receive_record(json::parse(rb).get<ExchangeRecord>());
  if (!u || u->self_report == "none" || client != u->id) return;
  UserReport rep{order_id, o.fiat_amount};
  if (u->self_report == "wrong") rep.fiat_amount += o.rate;
  const auto& ub = net_.send(u->id, kAuditor, "self_report", phase, rep);
  aa_->receive_report(json::parse(ub).get<UserReport>());
}

std::vector<AuditOutcome> Simulation::run_audit() {
  std::vector<AuditOutcome> out;
  const auto records = aa_->records();
  for (const auto& rec : records) {
    Phase ph(*this, "audit", rec.order_id);
    auto one = audit(*aa_, {rec}, aa_->reports());
    out.insert(out.end(), one.begin(), one.end());
  }
  return out;
}

SimulationReport Simulation::run() {
  onboard_all();
  for (const auto& spec : scenario_.orders) run_order(spec);
  settle_chain();
  for (auto& o : outcomes_) refresh(o);
  SimulationReport rep;
  rep.scenario = scenario_.name;
  rep.mode = scenario_.mode;
  rep.registrations = registrations_;
  rep.orders = outcomes_;
  rep.audit = run_audit();
  rep.aa_decryptions = aa_->decryptions();
  rep.properties = check_properties();
  return rep;
}

std::size_t Simulation::platform_taint_hits() const {
  auto seen = net_.received_bytes(kPlatform, exchange_phases());
  std::size_t hits = 0;
  for (const auto& [_, u] : users_) {
    for (std::int64_t v : {u->pii.ssn, u->bank_ssn, u->account}) {
      if (crypto::contains_taint(seen, crypto::Int(static_cast<long>(v)))) ++hits;
    }
  }
  return hits;
}

std::size_t Simulation::bank_address_hits() const {
  std::size_t hits = 0;
  for (const auto& [name, _] : banks_) {
    auto seen = net_.received_bytes(name);
    for (const auto& [id, o] : platform_->orders()) {
      for (const auto& a : o.user_addresses) {
        if (seen.find(a) != std::string::npos) ++hits;
      }
    }
  }
  return hits;
}

std::size_t Simulation::link_secret_hits() const {
  std::string all;
  for (const auto& m : net_.messages()) all += m.payload;
  std::size_t hits = 0;
  for (const auto& [_, u] : users_) {
    if (crypto::contains_taint(all, u->wallet.link_secret().value)) ++hits;
  }
  return hits;
}

std::vector<PropertyResult> Simulation::check_properties() const {
  std::vector<PropertyResult> out;
  const auto& log = platform_->transitions();
  out.push_back({"state-machine", log.safe(),
                 std::to_string(log.transitions().size()) + " transitions, " +
                     std::to_string(log.violations()) + " illegal"});

  out.push_back({"fiat-conservation", fiat_total() == initial_fiat_,
                 std::to_string(fiat_total()) + " vs " + std::to_string(initial_fiat_)});
  out.push_back({"crypto-conservation", chain_.total_balances() == chain_.total_supply(),
                 std::to_string(chain_.total_balances()) + " vs " +
                     std::to_string(chain_.total_supply())});

  // Failed orders moved nothing; every settled order delivered in full.
  std::set<std::string> settled;
  for (const auto& [_, b] : banks_) settled.insert(b->settled_orders().begin(), b->settled_orders().end());
  std::size_t bad = 0;
  for (const auto& [id, o] : platform_->orders()) {
    if (o.state == OrderState::kFailed) {
      if (settled.contains(id) || delivered(id) != 0) ++bad;
    } else if (o.state == OrderState::kComplete) {
      std::int64_t on_chain = 0;
      for (const auto& a : o.user_addresses) on_chain += chain_.balance(a);
      if (!settled.contains(id) || delivered(id) != o.crypto_amount || on_chain != o.crypto_amount) ++bad;
    } else if (queue_.pending() == 0) {
      ++bad;  // stuck mid-flight after the chain settled
    }
  }
  out.push_back({"atomicity", bad == 0, std::to_string(bad) + " inconsistent orders"});

  // Each (pool, user) pair at most once; pool addresses never cross epochs.
  std::map<std::pair<std::string, std::string>, int> pairs;
  std::size_t repeats = 0;
  const auto& treasury = platform_->config().treasury;
  for (const auto& tx : chain_.transactions()) {
    if (tx.from == treasury || tx.from == ledger::kGenesisAddress) continue;
    if (++pairs[{tx.from, tx.to}] > 1) ++repeats;
  }
  std::map<std::string, std::string> owner;
  for (const auto& [id, o] : platform_->orders()) {
    if (o.failure == "address-reuse" || o.failure == "request") continue;
    for (const auto& a : o.user_addresses) {
      if (!owner.emplace(a, id).second) ++repeats;
    }
  }
  out.push_back({"address-hygiene", repeats == 0, std::to_string(repeats) + " repeats"});

  out.push_back({"link-secret-confinement", link_secret_hits() == 0,
                 std::to_string(link_secret_hits()) + " leaks"});
  if (scenario_.mode == Mode::kFcGuard) {
    auto p = platform_taint_hits();
    out.push_back({"platform-blindness", p == 0, std::to_string(p) + " SSN/account hits"});
    auto b = bank_address_hits();
    out.push_back({"bank-blindness", b == 0, std::to_string(b) + " address hits"});
  }
  return out;
}

}  // namespace fcguard::parties
