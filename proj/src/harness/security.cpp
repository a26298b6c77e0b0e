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

#include <functional>
#include <map>
#include <set>

#include "fcguard/error.hpp"
#include "fcguard/harness/harness.hpp"
#include "fcguard/presentations/proofs.hpp"

namespace fcguard::harness {

using presentations::EqualityProof;
using presentations::HolderSession;
using presentations::Presentation;
using presentations::PredicateProof;
using presentations::VerifiableEncryptionProof;

namespace {

// Paths to every integer-valued leaf (canonical integer strings).
void integer_leaves(const json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) integer_leaves(v, path + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) integer_leaves(j[i], path + "/" + std::to_string(i), out);
  } else if (j.is_string()) {
    try {
      crypto::decode_int(j.get_ref<const std::string&>());
      out.push_back(path);
    } catch (const Error&) {
    }
  }
}

json bump(const json& j, const std::string& pointer) {
  json copy = j;
  auto& leaf = copy.at(json::json_pointer(pointer));
  leaf = crypto::encode_int(crypto::decode_int(leaf.get<std::string>()) + 1);
  return copy;
}

// A toy world with two onboarded users, used as a fixture for artifact-level checks.
Scenario fixture_scenario(std::uint64_t seed) {
  auto s = random_scenario(seed, Mode::kFcGuard, 2, 0);
  // Same bank for both so cross-user splices are well formed.
  for (auto& u : s.users) u.bank = "First Bank";
  s.banks[1].accounts.clear();
  s.banks[0].accounts.resize(1);
  for (const auto& u : s.users) s.banks[0].accounts.push_back({u.account, u.pii.ssn, 5000, ""});
  return s;
}

struct Artifacts {
  Presentation vp_pu, vp_bu;
  EqualityProof eq;
  VerifiableEncryptionProof ua, bu;
  PredicateProof pred;
  crypto::Int threshold;
};

Artifacts make_artifacts(parties::Simulation& sim, parties::User& u, const std::string& nonce) {
  HolderSession s(u.wallet, sim.registry(), nonce, u.rng);
  Artifacts a;
  a.vp_pu = s.present(sim.platform_definition_id(), {}, {"ssn", "birthday"});
  a.vp_bu = s.present(parties::Simulation::bank_definition_id(u.bank), {"bank_name"},
                      {"ssn", "account"});
  a.eq = s.prove_equality(a.vp_pu, "ssn", a.vp_bu, "ssn");
  a.ua = s.prove_encryption(a.vp_pu, "ssn",
                            parties::fetch_encryption_key(sim.registry(),
                                                          parties::Simulation::kAuditorKeyId));
  a.bu = s.prove_encryption(a.vp_bu, "account",
                            parties::fetch_encryption_key(sim.registry(), "bank-enc:" + u.bank));
  a.threshold = presentations::age_threshold(20250101, 18);
  a.pred = s.prove_predicate_ge(a.vp_pu, "birthday", a.threshold);
  return a;
}

}  // namespace

MutationResult run_mutation_matrix(std::uint64_t seed) {
  MutationResult res;
  auto scenario = fixture_scenario(seed);
  parties::Simulation sim(scenario);
  sim.onboard_all();
  auto& alice = sim.user(scenario.users[0].id);
  auto& bob = sim.user(scenario.users[1].id);
  const auto& reg = sim.registry();
  const std::string nonce = "mutation-session";
  auto A = make_artifacts(sim, alice, nonce);
  auto B = make_artifacts(sim, bob, nonce);
  auto aa_pk = parties::fetch_encryption_key(reg, parties::Simulation::kAuditorKeyId);
  auto bank_pk = parties::fetch_encryption_key(reg, "bank-enc:" + alice.bank);

  auto tally = [&](const std::string& family, const std::string& name, bool accepted) {
    ++res.cases;
    ++res.per_family[family];
    if (accepted) {
      ++res.false_accepts;
      res.accepted.push_back(family + ":" + name);
    }
  };
  // Baseline sanity: untouched artifacts must verify, or the matrix means nothing.
  enforce(presentations::verify_presentation(reg, A.vp_pu, nonce) &&
              presentations::verify_equality(reg, A.vp_pu, A.vp_bu, A.eq, nonce) &&
              presentations::verify_verifiable_encryption(reg, A.vp_pu, A.ua, aa_pk, nonce) &&
              presentations::verify_verifiable_encryption(reg, A.vp_bu, A.bu, bank_pk, nonce) &&
              presentations::verify_predicate(reg, A.vp_pu, A.pred, A.threshold, nonce),
          ErrorCode::kStateViolation, "honest artifacts failed to verify");

  auto each_leaf = [&](const std::string& family, const json& j,
                       const std::function<bool(const json&)>& accepts) {
    std::vector<std::string> leaves;
    integer_leaves(j, "", leaves);
    for (const auto& p : leaves) {
      bool ok = false;
      try {
        ok = accepts(bump(j, p));
      } catch (const std::exception&) {
        ok = false;
      }
      tally(family, p, ok);
    }
  };

  // Issuance: request fields, signature fields, issuer proof.
  {
    const auto& issuer = sim.platform().issuer();
    auto pending = credentials::create_credential_request(reg, issuer.definition.id,
                                                          alice.wallet.link_secret(), "issue",
                                                          alice.rng);
    each_leaf("credential-request", json(pending.request), [&](const json& m) {
      return credentials::verify_credential_request(
          issuer.definition, m.get<credentials::CredentialRequest>(), "issue");
    });
    crypto::Rng rng(seed ^ 0x5157);
    auto issued = credentials::issue_credential(
        issuer, pending.request, "issue",
        {alice.pii.name, alice.pii.birthday, alice.pii.ssn}, rng);
    each_leaf("credential-signature", json(issued), [&](const json& m) {
      credentials::holder_complete(reg, m.get<credentials::Credential>(), pending,
                                   alice.wallet.link_secret());
      return true;
    });
  }

  // Presentations: every response, commitment and A'.
  each_leaf("presentation", json(A.vp_pu), [&](const json& m) {
    return presentations::verify_presentation(reg, m.get<Presentation>(), nonce);
  });
  each_leaf("presentation", json(A.vp_bu), [&](const json& m) {
    return presentations::verify_presentation(reg, m.get<Presentation>(), nonce);
  });
  {
    auto vp = A.vp_bu;
    vp.disclosed.at("bank_name").raw = std::string("Other Bank");
    tally("presentation", "disclosed-bank-name",
          presentations::verify_presentation(reg, vp, nonce));
    vp = A.vp_pu;
    vp.nonce = "other-session";
    tally("presentation", "nonce", presentations::verify_presentation(reg, vp, "other-session"));
    vp = A.vp_pu;
    vp.definition_id = parties::Simulation::bank_definition_id(alice.bank);
    tally("presentation", "definition", presentations::verify_presentation(reg, vp, nonce));
  }

  // Equality proofs: fields, then splices across users and sessions.
  each_leaf("equality", json(A.eq), [&](const json& m) {
    return presentations::verify_equality(reg, A.vp_pu, A.vp_bu, m.get<EqualityProof>(), nonce);
  });
  tally("equality-splice", "other-user-bank-vp",
        presentations::verify_equality(reg, A.vp_pu, B.vp_bu, A.eq, nonce));
  tally("equality-splice", "other-user-proof",
        presentations::verify_equality(reg, A.vp_pu, A.vp_bu, B.eq, nonce));
  tally("equality-splice", "swapped-sides",
        presentations::verify_equality(reg, A.vp_bu, A.vp_pu, A.eq, nonce));
  {
    auto other = make_artifacts(sim, alice, "other-session");
    tally("equality-splice", "other-session-proof",
          presentations::verify_equality(reg, A.vp_pu, A.vp_bu, other.eq, nonce));
    tally("equality-splice", "mixed-session-vps",
          presentations::verify_equality(reg, A.vp_pu, other.vp_bu, other.eq, "other-session"));
  }

  // Verifiable encryption: ciphertext components and proof responses.
  each_leaf("encryption-elgamal", json(A.ua), [&](const json& m) {
    return presentations::verify_verifiable_encryption(reg, A.vp_pu,
                                                       m.get<VerifiableEncryptionProof>(), aa_pk,
                                                       nonce);
  });
  each_leaf("encryption-paillier", json(A.bu), [&](const json& m) {
    return presentations::verify_verifiable_encryption(reg, A.vp_bu,
                                                       m.get<VerifiableEncryptionProof>(),
                                                       bank_pk, nonce);
  });
  {
    auto swapped = A.ua;
    swapped.ciphertext = B.ua.ciphertext;
    tally("encryption-splice", "other-user-ciphertext",
          presentations::verify_verifiable_encryption(reg, A.vp_pu, swapped, aa_pk, nonce));
    tally("encryption-splice", "other-user-vp",
          presentations::verify_verifiable_encryption(reg, B.vp_pu, A.ua, aa_pk, nonce));
    tally("encryption-splice", "wrong-key",
          presentations::verify_verifiable_encryption(reg, A.vp_pu, A.ua, bank_pk, nonce));
  }

  // Predicate: every bit commitment, branch challenge and response.
  each_leaf("predicate", json(A.pred), [&](const json& m) {
    return presentations::verify_predicate(reg, A.vp_pu, m.get<PredicateProof>(), A.threshold,
                                           nonce);
  });
  tally("predicate", "threshold-shift",
        presentations::verify_predicate(reg, A.vp_pu, A.pred, A.threshold + 1, nonce));
  return res;
}

UnlinkabilityResult run_unlinkability(std::uint64_t seed, std::size_t count) {
  auto scenario = fixture_scenario(seed);
  parties::Simulation sim(scenario);
  sim.onboard_all();
  auto& u = sim.user(scenario.users[0].id);
  auto aa_pk = parties::fetch_encryption_key(sim.registry(), parties::Simulation::kAuditorKeyId);
  HolderSession s(u.wallet, sim.registry(), "unlinkability", u.rng);
  UnlinkabilityResult res;
  std::map<std::string, std::size_t> seen;  // value -> presentations containing it
  std::set<std::string> ciphertexts;
  for (std::size_t i = 0; i < count; ++i) {
    auto vp = s.present(sim.platform_definition_id(), {}, {"ssn"});
    std::vector<std::string> leaves;
    json j = vp;
    integer_leaves(j, "", leaves);
    std::set<std::string> mine;
    for (const auto& p : leaves) mine.insert(j.at(json::json_pointer(p)).get<std::string>());
    for (const auto& v : mine) ++seen[v];
    ++res.presentations;
    auto ve = s.prove_encryption(vp, "ssn", aa_pk);
    ciphertexts.insert(crypto::canonical_dump(crypto::ciphertext_to_json(ve.ciphertext)));
    ++res.encryptions;
  }
  for (const auto& [_, n] : seen) {
    if (n > 1) ++res.shared_presentation_values;
  }
  res.repeated_ciphertexts = res.encryptions - ciphertexts.size();
  return res;
}

AuditBranchResult run_audit_branches(std::uint64_t seed, std::size_t users) {
  AuditBranchResult res;
  res.users = users;
  for (const char* mode : {"honest", "none"}) {
    auto s = random_scenario(seed, Mode::kFcGuard, users, 0);
    for (auto& u : s.users) {
      u.self_report = mode;
      parties::OrderSpec o;
      o.user = u.id;
      o.crypto_amount = 7;
      s.orders.push_back(o);
    }
    parties::Simulation sim(s);
    auto rep = sim.run();
    if (std::string(mode) == "honest") {
      for (const auto& a : rep.audit) res.compliant += a.verdict == parties::AuditVerdict::kCompliant;
      res.decryptions_for_compliant = rep.aa_decryptions;
    } else {
      for (std::size_t i = 0; i < rep.orders.size(); ++i) {
        for (const auto& a : rep.audit) {
          if (a.order_id == rep.orders[i].order_id &&
              a.verdict == parties::AuditVerdict::kDeanonymized &&
              a.ssn == s.users[i].pii.ssn) {
            ++res.deanonymized_correct;
          }
        }
      }
    }
  }
  return res;
}

HygieneResult run_hygiene_batch(std::uint64_t seed, std::size_t orders, std::uint32_t epoch,
                                std::size_t addresses) {
  auto s = random_scenario(seed, Mode::kFcGuard, 4, orders);
  s.config.rotation_epoch = epoch;
  s.config.pool_addresses_per_epoch = 3;
  for (auto& o : s.orders) o.address_count = addresses;
  // Funds for every order so the whole batch reaches the chain.
  for (auto& b : s.banks) {
    for (auto& a : b.accounts) a.balance = std::max<std::int64_t>(a.balance, 1'000'000);
  }
  parties::Simulation sim(s);
  auto rep = sim.run();
  HygieneResult res;
  std::map<std::string, int> owner_count;
  for (const auto& o : rep.orders) {
    if (o.state == "complete") ++res.orders;
    for (const auto& a : o.addresses) ++owner_count[a];
  }
  for (const auto& [_, n] : owner_count) res.address_repeats += n > 1;
  std::set<std::string> pool;
  std::set<std::uint64_t> epochs;
  const auto max_delay = s.config.max_delay_s * 1'000'000;
  for (const auto& t : sim.scheduled()) {
    pool.insert(t.from);
    ++res.transfers;
    auto d = t.release_us - t.enqueue_us;
    if (d < 0 || d > max_delay) ++res.delays_out_of_range;
  }
  for (const auto& [pair, e] : sim.platform().pool().used_pairs()) epochs.insert(e);
  res.pool_addresses = pool.size();
  res.epochs = epochs.size();
  // Cross-check against the public chain: the pool senders are what anyone sees.
  std::set<std::string> on_chain;
  for (const auto& tx : sim.chain().transactions()) {
    if (tx.from.rfind("pool-", 0) == 0) on_chain.insert(tx.from);
  }
  if (on_chain != pool) res.delays_out_of_range += 1;
  return res;
}

std::vector<SuiteLine> run_security_suite(const SuiteOptions& options) {
  std::vector<SuiteLine> out;
  std::size_t fc_hits = 0, base_hits = 0, bank_hits = 0, secret_hits = 0;
  std::size_t conservation_bad = 0, atomic_bad = 0, machine_bad = 0, runs = 0;
  std::size_t fc_scenarios = 0, base_scenarios = 0;
  auto tally_props = [&](const parties::SimulationReport& rep) {
    ++runs;
    for (const auto& p : rep.properties) {
      if (p.pass) continue;
      if (p.name == "fiat-conservation" || p.name == "crypto-conservation") ++conservation_bad;
      if (p.name == "atomicity") ++atomic_bad;
      if (p.name == "state-machine") ++machine_bad;
    }
  };
  for (std::size_t i = 0; i < options.scenarios; ++i) {
    std::uint64_t seed = options.seed * 1000 + i;
    auto fc = random_scenario(seed, Mode::kFcGuard, 3, 5);
    parties::Simulation fsim(fc);
    tally_props(fsim.run());
    fc_hits += fsim.platform_taint_hits();
    bank_hits += fsim.bank_address_hits();
    secret_hits += fsim.link_secret_hits();
    ++fc_scenarios;
    auto base = fc;
    base.mode = Mode::kBaseline;
    parties::Simulation bsim(base);
    tally_props(bsim.run());
    base_hits += bsim.platform_taint_hits();
    ++base_scenarios;
  }
  if (options.baseline_blindness) {
    out.push_back({"platform-blindness", base_hits == 0, base_scenarios,
                   "baseline mode: " + std::to_string(base_hits) + " SSN/account hits"});
  } else {
    out.push_back({"platform-blindness", fc_hits == 0, fc_scenarios,
                   std::to_string(fc_hits) + " SSN/account hits in exchange and audit traffic"});
  }
  out.push_back({"platform-blindness-control", base_hits >= 1, base_scenarios,
                 "baseline scan found " + std::to_string(base_hits) + " hits (must be >= 1)"});
  out.push_back({"bank-blindness", bank_hits == 0, fc_scenarios,
                 std::to_string(bank_hits) + " user addresses in bank traffic"});
  out.push_back({"link-secret-confinement", secret_hits == 0, fc_scenarios,
                 std::to_string(secret_hits) + " leaks"});

  auto un = run_unlinkability(options.seed);
  out.push_back({"unlinkability", un.shared_presentation_values == 0 && un.repeated_ciphertexts == 0,
                 un.presentations,
                 std::to_string(un.shared_presentation_values) + " shared presentation values, " +
                     std::to_string(un.repeated_ciphertexts) + " repeated ciphertexts"});

  auto mm = run_mutation_matrix(options.seed);
  std::string fams;
  for (const auto& [f, n] : mm.per_family) fams += " " + f + "=" + std::to_string(n);
  out.push_back({"mutation-matrix", mm.cases >= 50 && mm.false_accepts == 0, mm.cases,
                 std::to_string(mm.false_accepts) + " false accepts;" + fams});

  out.push_back({"conservation", conservation_bad == 0, runs,
                 std::to_string(conservation_bad) + " violations"});
  out.push_back({"atomicity", atomic_bad == 0, runs, std::to_string(atomic_bad) + " violations"});
  out.push_back({"state-machine", machine_bad == 0, runs,
                 std::to_string(machine_bad) + " illegal transitions"});

  auto ab = run_audit_branches(options.seed);
  out.push_back({"audit-branches",
                 ab.compliant == ab.users && ab.decryptions_for_compliant == 0 &&
                     ab.deanonymized_correct == ab.users,
                 2 * ab.users,
                 std::to_string(ab.compliant) + " compliant with " +
                     std::to_string(ab.decryptions_for_compliant) + " decryptions, " +
                     std::to_string(ab.deanonymized_correct) + " correct de-anonymizations"});

  {
    auto s = random_scenario(options.seed, Mode::kFcGuard, 2, 0);
    parties::OrderSpec stolen;
    stolen.user = s.users[0].id;
    stolen.crypto_amount = 5;
    stolen.attack = "replay_stolen";
    parties::OrderSpec honest = stolen;
    honest.attack = "none";
    parties::OrderSpec stale = stolen;
    stale.attack = "replay_stale";
    s.orders = {stolen, honest, stale};
    parties::Simulation sim(s);
    auto rep = sim.run();
    bool ok = rep.orders[0].state == "failed" && rep.orders[0].cause == "mfa" &&
              rep.orders[1].state == "complete" && rep.orders[2].state == "failed" &&
              rep.orders[2].cause == "identity" && sim.delivered(rep.orders[0].order_id) == 0 &&
              sim.delivered(rep.orders[2].order_id) == 0 &&
              sim.fiat_total() == sim.initial_fiat();
    out.push_back({"replay-protection", ok, 2,
                   "stolen -> " + rep.orders[0].state + "(" + rep.orders[0].cause + "), stale -> " +
                       rep.orders[2].state + "(" + rep.orders[2].cause + ")"});
  }

  auto hy = run_hygiene_batch(options.seed);
  out.push_back({"address-hygiene",
                 hy.orders == 20 && hy.address_repeats == 0 && hy.pool_addresses >= 2 &&
                     hy.delays_out_of_range == 0,
                 hy.transfers,
                 std::to_string(hy.orders) + " orders, " + std::to_string(hy.address_repeats) +
                     " repeated addresses, " + std::to_string(hy.pool_addresses) +
                     " pool addresses over " + std::to_string(hy.epochs) + " epochs, " +
                     std::to_string(hy.delays_out_of_range) + " delays outside [0, D]"});

  {
    auto s = random_scenario(options.seed + 7, Mode::kFcGuard, 2, 3);
    parties::Simulation a(s), b(s);
    a.run();
    b.run();
    out.push_back({"determinism",
                   a.network().event_log_jsonl() == b.network().event_log_jsonl() &&
                       a.chain().dump_jsonl() == b.chain().dump_jsonl(),
                   2, "two runs of one seed compared byte for byte"});
  }
  return out;
}

}  // namespace fcguard::harness
