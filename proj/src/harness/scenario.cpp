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

#include <fstream>
#include <set>
#include <sstream>

#include "fcguard/error.hpp"
#include "fcguard/harness/harness.hpp"

namespace fcguard::harness {

using parties::OrderSpec;
using parties::UserSpec;

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  enforce(static_cast<bool>(in), ErrorCode::kIo, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::kParseError, path.string() + ":" + std::to_string(line) + ":" +
                                     std::to_string(col) + ": " + e.what());
  }
  try {
    auto s = parties::scenario_from_json(j);
    if (!s.key_file.empty() && std::filesystem::path(s.key_file).is_relative()) {
      s.key_file = (path.parent_path() / s.key_file).lexically_normal().string();
    }
    return s;
  } catch (const Error& e) {
    fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

namespace {

PropertyResult expect_result(std::string name, bool pass, std::string detail) {
  return {"expect:" + std::move(name), pass, std::move(detail)};
}

}  // namespace

std::vector<PropertyResult> check_expectations(const parties::Simulation& sim,
                                               const parties::SimulationReport& report,
                                               const json& expect) {
  std::vector<PropertyResult> out;
  if (expect.contains("orders")) {
    const auto& want = expect.at("orders");
    for (std::size_t i = 0; i < want.size(); ++i) {
      std::string name = "order[" + std::to_string(i) + "]";
      if (i >= report.orders.size()) {
        out.push_back(expect_result(name, false, "no such order"));
        continue;
      }
      const auto& got = report.orders[i];
      // Only the fields the expectation names are compared.
      bool ok = true;
      std::string want_text;
      if (want[i].contains("state")) {
        ok = ok && got.state == want[i].at("state").get<std::string>();
        want_text += "state " + want[i].at("state").get<std::string>();
      }
      if (want[i].contains("cause")) {
        const auto cause = want[i].at("cause").get<std::string>();
        ok = ok && got.cause == cause;
        want_text += std::string(want_text.empty() ? "" : ", ") + "cause '" + cause + "'";
      }
      out.push_back(expect_result(
          name, ok, got.state + (got.cause.empty() ? "" : "(" + got.cause + ")") + ", want " +
                        (want_text.empty() ? "anything" : want_text)));
    }
  }
  if (expect.contains("registrations")) {
    for (const auto& [user, ok] : expect.at("registrations").items()) {
      bool got = false;
      for (const auto& r : report.registrations) {
        if (r.user == user) got = r.ok;
      }
      out.push_back(expect_result("registration[" + user + "]", got == ok.get<bool>(),
                                  got ? "registered" : "rejected"));
    }
  }
  if (expect.contains("audit")) {
    for (const auto& a : expect.at("audit")) {
      auto idx = a.at("order").get<std::size_t>();
      std::string name = "audit[order " + std::to_string(idx) + "]";
      if (idx >= report.orders.size()) {
        out.push_back(expect_result(name, false, "no such order"));
        continue;
      }
      const auto& oid = report.orders[idx].order_id;
      const parties::AuditOutcome* got = nullptr;
      for (const auto& o : report.audit) {
        if (o.order_id == oid) got = &o;
      }
      if (!got) {
        out.push_back(expect_result(name, false, "no exchange record"));
        continue;
      }
      bool ok = parties::to_string(got->verdict) == a.at("verdict").get<std::string>();
      std::string detail(parties::to_string(got->verdict));
      if (a.contains("ssn_of")) {
        const auto& seeded = sim.users().at(a.at("ssn_of").get<std::string>())->pii.ssn;
        ok = ok && got->ssn == seeded;
        detail += got->ssn ? ", ssn " + std::to_string(*got->ssn) : ", no ssn";
      }
      out.push_back(expect_result(name, ok, detail));
    }
  }
  if (expect.contains("aa_decryptions")) {
    auto want = expect.at("aa_decryptions").get<std::uint64_t>();
    out.push_back(expect_result("aa_decryptions", report.aa_decryptions == want,
                                std::to_string(report.aa_decryptions)));
  }
  if (expect.value("no_money_moved", false)) {
    bool ok = true;
    for (const auto& b : sim.scenario().banks) {
      for (const auto& a : b.accounts) {
        ok = ok && sim.banks().at(b.name)->accounts().at(a.number).balance == a.balance;
      }
    }
    std::size_t txs = sim.chain().transactions().size();
    ok = ok && txs == (sim.scenario().platform.treasury > 0 ? 1u : 0u);
    out.push_back(expect_result("no_money_moved", ok, std::to_string(txs) + " chain txs"));
  }
  return out;
}

bool ScenarioRun::ok() const {
  if (!report.ok()) return false;
  for (const auto& e : expectations) {
    if (!e.pass) return false;
  }
  return true;
}

std::string ScenarioRun::summary() const {
  std::ostringstream os;
  os << "scenario " << report.scenario << " (" << parties::to_string(report.mode) << ")\n";
  for (const auto& o : report.orders) {
    os << "  order " << o.order_id << " user=" << o.user << " client=" << o.client << " -> "
       << o.state;
    if (!o.cause.empty()) os << "(" << o.cause << ")";
    os << '\n';
  }
  for (const auto& a : report.audit) {
    os << "  audit " << a.order_id << " -> " << parties::to_string(a.verdict);
    if (a.ssn) os << " ssn=" << *a.ssn;
    os << '\n';
  }
  os << "  aa decryptions: " << report.aa_decryptions << '\n';
  auto line = [&](const PropertyResult& p) {
    os << (p.pass ? "PASS " : "FAIL ") << p.name << " - " << p.detail << '\n';
  };
  for (const auto& p : report.properties) line(p);
  for (const auto& p : expectations) line(p);
  return os.str();
}

ScenarioRun run_scenario(const Scenario& scenario, const KeyMaterial* keys) {
  std::optional<KeyMaterial> loaded;
  if (!keys && !scenario.key_file.empty()) {
    loaded = parties::load_key_material(scenario.key_file);
    keys = &*loaded;
  }
  parties::Simulation sim(scenario, keys);
  ScenarioRun run;
  run.report = sim.run();
  run.expectations = check_expectations(sim, run.report, scenario.expect);
  run.event_log = sim.network().event_log_jsonl();
  run.chain_log = sim.chain().dump_jsonl();
  return run;
}

Scenario random_scenario(std::uint64_t seed, Mode mode, std::size_t users, std::size_t orders) {
  crypto::Rng rng(seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.below_u64(static_cast<std::uint64_t>(hi - lo + 1)));
  };
  Scenario s;
  s.name = "random-" + std::to_string(seed);
  s.seed = seed;
  s.mode = mode;
  s.config.min_age = rng.below_u64(2) ? 18 : 0;
  s.config.pool_addresses_per_epoch = static_cast<std::uint32_t>(pick(2, 4));
  s.config.rotation_epoch = static_cast<std::uint32_t>(pick(2, 10));
  s.banks = {{"First Bank", {}}, {"Second Bank", {}}};
  const std::int64_t platform_account = 90000000000000000 + pick(1, 999999);
  s.banks[0].accounts.push_back({platform_account, 100000001, 0, "platform"});
  s.platform = {"First Bank", platform_account, 10'000'000};
  std::set<std::int64_t> ssns{100000001}, accounts{platform_account};
  for (std::size_t i = 0; i < users; ++i) {
    UserSpec u;
    u.id = "user" + std::to_string(i);
    std::int64_t ssn;
    do ssn = pick(100000000, 999999999); while (!ssns.insert(ssn).second);
    std::int64_t account;
    do account = pick(10000000000000000, 89999999999999999); while (!accounts.insert(account).second);
    std::int64_t year = pick(1950, 2000), month = pick(1, 12), day = pick(1, 28);
    u.pii = {"User " + std::to_string(i), year * 10000 + month * 100 + day, ssn};
    u.bank = s.banks[rng.below_u64(2)].name;
    u.account = account;
    u.self_report = rng.below_u64(2) ? "honest" : "none";
    for (auto& b : s.banks) {
      if (b.name == u.bank) b.accounts.push_back({account, ssn, pick(1000, 100000), ""});
    }
    s.users.push_back(std::move(u));
  }
  for (std::size_t i = 0; i < orders; ++i) {
    OrderSpec o;
    o.user = s.users[rng.below_u64(users)].id;
    o.crypto_amount = pick(1, 60);
    o.address_count = static_cast<std::size_t>(pick(1, 3));
    s.orders.push_back(std::move(o));
  }
  return s;
}

}  // namespace fcguard::harness
