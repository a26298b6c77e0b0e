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

#include "fcguard/parties/parties.hpp"

#include <algorithm>
#include <cstdio>

#include "fcguard/crypto/hash.hpp"
#include "fcguard/error.hpp"
#include "fcguard/presentations/proofs.hpp"

namespace fcguard::parties {

using presentations::Presentation;
using presentations::PresentationBundle;

std::string random_nonce(crypto::Rng& rng) {
  std::vector<std::uint8_t> b(16);
  rng.fill(b);
  return crypto::to_hex(b);
}

std::string random_address(crypto::Rng& rng) {
  std::vector<std::uint8_t> b(12);
  rng.fill(b);
  return "addr1" + crypto::to_hex(b);
}

std::string mfa_code(crypto::Rng& rng) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%06llu",
                static_cast<unsigned long long>(rng.below_u64(1000000)));
  return buf;
}

void publish_encryption_key(ledger::Registry& registry, const crypto::EncryptionPublicKey& pk) {
  registry.put(pk.key_id, ledger::EntryKind::kEncryptionKey, crypto::canonical_dump(json(pk)));
}

crypto::EncryptionPublicKey fetch_encryption_key(const ledger::Registry& registry,
                                                 std::string_view key_id) {
  return registry.get_json(ledger::EntryKind::kEncryptionKey, key_id)
      .get<crypto::EncryptionPublicKey>();
}

bool Ssa::verify(const PiiRecord& pii) const {
  return pii_valid(pii) && std::find(records_.begin(), records_.end(), pii) != records_.end();
}

AuditingAuthority::AuditingAuthority(std::string key_id, crypto::ElGamalKeyPair keys)
    : key_id_(std::move(key_id)), keys_(std::move(keys)) {}

std::int64_t AuditingAuthority::decrypt(const crypto::ElGamalCiphertext& ct) {
  if (!decryptor_) decryptor_ = std::make_unique<crypto::ElGamalDecryptor>(keys_.priv);
  ++decryptions_;
  return decryptor_->decrypt(ct).get_si();
}

std::vector<AuditOutcome> audit(AuditingAuthority& authority,
                                const std::vector<ExchangeRecord>& records,
                                const std::vector<UserReport>& reports) {
  std::vector<AuditOutcome> out;
  for (const auto& r : records) {
    bool matched = std::any_of(reports.begin(), reports.end(), [&](const UserReport& u) {
      return u.order_id == r.order_id && u.fiat_amount == r.fiat_amount;
    });
    AuditOutcome o{r.order_id, AuditVerdict::kCompliant, std::nullopt};
    if (!matched) {
      o.verdict = AuditVerdict::kDeanonymized;
      if (r.plaintext_ssn) {
        o.ssn = *r.plaintext_ssn;
      } else if (r.enc_ssn) {
        try {
          o.ssn = authority.decrypt(*r.enc_ssn);
        } catch (const Error&) {
          // Left without an SSN; the verdict stands.
        }
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

// --- Bank -------------------------------------------------------------------

Bank::Bank(std::string name, credentials::Issuer issuer, crypto::PaillierKeyPair enc,
           std::vector<AccountRecord> accounts)
    : name_(std::move(name)), issuer_(std::move(issuer)), enc_(std::move(enc)) {
  for (auto& a : accounts) {
    enforce(a.balance >= 0, ErrorCode::kInvalidArgument, "negative opening balance");
    auto number = a.number;
    enforce(accounts_.emplace(number, std::move(a)).second, ErrorCode::kDuplicateId,
            "duplicate account number");
  }
}

std::int64_t Bank::total_balance() const {
  std::int64_t sum = 0;
  for (const auto& [_, a] : accounts_) sum += a.balance;
  return sum;
}

void Bank::credit(std::int64_t account, std::int64_t amount) {
  auto it = accounts_.find(account);
  enforce(it != accounts_.end(), ErrorCode::kUnknownId, "unknown account");
  it->second.balance += amount;
}

credentials::Credential Bank::issue_account_credential(
    const credentials::CredentialRequest& request, std::string_view nonce, std::int64_t account,
    std::int64_t ssn, crypto::Rng& rng) const {
  auto it = accounts_.find(account);
  enforce(it != accounts_.end() && it->second.owner_ssn == ssn, ErrorCode::kVerificationFailed,
          "not a customer of " + name_);
  return credentials::issue_credential(issuer_, request, nonce, {name_, account, ssn}, rng);
}

BankVerdict Bank::handle_mpb(const json& mpb, const ledger::Registry& registry,
                             crypto::Rng& rng, MfaChallenge* challenge) {
  try {
    auto order_id = mpb.at("order_id").get<std::string>();
    auto nonce = mpb.at("nonce").get<std::string>();
    auto fiat = mpb.at("fiat_amount").get<std::int64_t>();
    auto vp = mpb.at("presentation").get<Presentation>();
    auto proof = mpb.at("encryption").get<presentations::VerifiableEncryptionProof>();
    if (pending_.contains(order_id) || fiat <= 0) return {false, "bank"};
    if (vp.definition_id != issuer_.definition.id) return {false, "bank"};
    auto name = vp.disclosed.find("bank_name");
    if (name == vp.disclosed.end() || name->second.raw != crypto::RawAttribute(name_)) {
      return {false, "bank"};
    }
    if (!presentations::verify_presentation(registry, vp, nonce)) return {false, "bank"};
    if (proof.key_id != key_id() || proof.attribute != "account" ||
        !presentations::verify_verifiable_encryption(registry, vp, proof, public_key(), nonce)) {
      return {false, "bank"};
    }
    auto account =
        crypto::paillier_decrypt(enc_, std::get<crypto::PaillierCiphertext>(proof.ciphertext));
    if (!account.fits_slong_p() || !accounts_.contains(account.get_si())) {
      return {false, "bank"};
    }
    Authorization auth;
    auth.account = account.get_si();
    auth.fiat_amount = fiat;
    auth.code = mfa_code(rng);
    if (challenge) *challenge = {accounts_.at(auth.account).phone, auth.code};
    pending_.emplace(order_id, std::move(auth));
    return {true, {}};
  } catch (const std::exception&) {
    return {false, "bank"};
  }
}

BankVerdict Bank::handle_mfa(const std::string& order_id, const std::string& code) {
  auto it = pending_.find(order_id);
  if (it == pending_.end() || it->second.mfa_done) return {false, "mfa"};
  it->second.mfa_done = true;
  // Constant-time compare is moot in a simulator, but cheap.
  const auto& want = it->second.code;
  bool eq = want.size() == code.size();
  for (std::size_t i = 0; eq && i < want.size(); ++i) eq = want[i] == code[i];
  it->second.approved = eq;
  return eq ? BankVerdict{true, {}} : BankVerdict{false, "mfa"};
}

BankVerdict Bank::handle_baseline_debit(const json& request) {
  try {
    auto order_id = request.at("order_id").get<std::string>();
    auto account = request.at("account").get<std::int64_t>();
    auto ssn = request.at("ssn").get<std::int64_t>();
    auto fiat = request.at("fiat_amount").get<std::int64_t>();
    auto it = accounts_.find(account);
    if (pending_.contains(order_id) || fiat <= 0 || it == accounts_.end() ||
        it->second.owner_ssn != ssn) {
      return {false, "bank"};
    }
    pending_.emplace(order_id, Authorization{account, fiat, {}, true, true});
    return {true, {}};
  } catch (const std::exception&) {
    return {false, "bank"};
  }
}

BankVerdict Bank::settle(const std::string& order_id, std::int64_t now_us, json* receipt) {
  auto it = pending_.find(order_id);
  if (it == pending_.end() || !it->second.approved || settled_.contains(order_id)) {
    return {false, "bank"};
  }
  auto& acct = accounts_.at(it->second.account);
  if (acct.balance < it->second.fiat_amount) return {false, "funds"};
  acct.balance -= it->second.fiat_amount;
  settled_.insert(order_id);
  if (receipt) {
    *receipt = json{{"status", "settled"},
                    {"receipt_id", "rcpt:" + name_ + ":" + order_id},
                    {"order_id", order_id},
                    {"bank", name_},
                    {"fiat_amount", it->second.fiat_amount},
                    {"timestamp_us", now_us}};
  }
  return {true, {}};
}

// --- Platform ---------------------------------------------------------------

Platform::Platform(credentials::Issuer issuer, PlatformConfig config, AddressPool pool)
    : issuer_(std::move(issuer)), config_(std::move(config)), pool_(std::move(pool)) {
  enforce(config_.rate > 0, ErrorCode::kInvalidArgument, "rate must be positive");
}

credentials::Credential Platform::register_user(const PiiRecord& pii,
                                                const credentials::CredentialRequest& request,
                                                std::string_view nonce, crypto::Rng& rng) {
  auto cred =
      credentials::issue_credential(issuer_, request, nonce, {pii.name, pii.birthday, pii.ssn}, rng);
  registrations_.emplace(std::string(nonce), pii);
  ++registered_;
  return cred;
}

std::string Platform::baseline_register(const std::string& user_id, const PiiRecord& pii,
                                        crypto::Rng& rng) {
  auto token = random_nonce(rng);
  tokens_.emplace(token, std::make_pair(user_id, pii));
  ++registered_;
  return token;
}

namespace {

json failed_quote(const ExchangeOrder& o) {
  return json{{"order_id", o.id}, {"status", "failed"}, {"cause", o.failure}};
}

}  // namespace

json Platform::handle_exchange_request(const json& request, std::int64_t now_us,
                                       crypto::Rng& rng) {
  ExchangeOrder o;
  char idbuf[32];
  std::snprintf(idbuf, sizeof idbuf, "ord-%05zu", orders_.size() + 1);
  o.id = idbuf;
  o.rate = config_.rate;
  o.nonce = random_nonce(rng);
  std::string cause;
  try {
    o.asset = request.at("asset").get<std::string>();
    o.crypto_amount = request.at("crypto_amount").get<std::int64_t>();
    o.user_addresses = request.at("addresses").get<std::vector<std::string>>();
    if (o.crypto_amount <= 0 || o.user_addresses.empty() ||
        __builtin_mul_overflow(o.crypto_amount, o.rate, &o.fiat_amount)) {
      cause = "request";
    }
  } catch (const std::exception&) {
    cause = "request";
  }
  if (cause.empty()) {
    std::set<std::string> seen;
    for (const auto& a : o.user_addresses) {
      if (used_addresses_.contains(a) || !seen.insert(a).second) cause = "address-reuse";
    }
    if (cause.empty()) used_addresses_.insert(seen.begin(), seen.end());
  }
  auto id = o.id;
  orders_.emplace(id, std::move(o));
  auto& order = orders_.at(id);
  if (!cause.empty()) {
    transition(id, OrderState::kFailed, now_us, cause);
    return failed_quote(order);
  }
  json quote{{"order_id", id},
             {"status", "created"},
             {"nonce", order.nonce},
             {"asset", order.asset},
             {"crypto_amount", order.crypto_amount},
             {"fiat_amount", order.fiat_amount},
             {"rate", order.rate},
             {"definition_id", issuer_.definition.id}};
  if (config_.min_age > 0) {
    quote["min_age"] = config_.min_age;
    quote["age_threshold"] = presentations::age_threshold(config_.today, config_.min_age).get_si();
  }
  return quote;
}

json Platform::handle_baseline_login(const json& request, std::int64_t now_us,
                                     crypto::Rng& rng) {
  std::string token = request.value("token", std::string());
  std::string user = request.value("user_id", std::string());
  auto quote = handle_exchange_request(request, now_us, rng);
  auto id = quote.at("order_id").get<std::string>();
  if (order(id).state == OrderState::kFailed) return quote;
  auto it = tokens_.find(token);
  if (it == tokens_.end() || it->second.first != user) {
    transition(id, OrderState::kFailed, now_us, "identity");
    return failed_quote(order(id));
  }
  baseline_books_[id] = json{{"user_id", user}, {"pii", it->second.second},
                             {"addresses", order(id).user_addresses}};
  transition(id, OrderState::kIdentityVerified, now_us);
  quote["status"] = to_string(OrderState::kIdentityVerified);
  return quote;
}

bool Platform::handle_identity_bundle(const std::string& order_id, const json& bundle_json,
                                      const ledger::Registry& registry,
                                      std::string_view aa_key_id, std::int64_t now_us) {
  auto& o = order(order_id);
  if (o.state != OrderState::kCreated) return false;
  std::string cause = "identity";
  try {
    auto bundle = bundle_json.get<PresentationBundle>();
    auto fail_with = [&](std::string c) {
      cause = std::move(c);
      throw Error(ErrorCode::kVerificationFailed, cause);
    };
    if (bundle.nonce != o.nonce || bundle.presentations.size() != 1) fail_with("identity");
    const auto& vp = bundle.presentations.front();
    if (vp.definition_id != issuer_.definition.id || !vp.commitments.contains("ssn") ||
        !presentations::verify_presentation(registry, vp, o.nonce)) {
      fail_with("identity");
    }
    auto aa_pk = fetch_encryption_key(registry, aa_key_id);
    const presentations::VerifiableEncryptionProof* ua = nullptr;
    for (const auto& e : bundle.encryptions) {
      if (e.presentation == vp.id() && e.attribute == "ssn" && e.key_id == aa_key_id) ua = &e;
    }
    if (!ua || !presentations::verify_verifiable_encryption(registry, vp, *ua, aa_pk, o.nonce)) {
      fail_with("identity");
    }
    if (config_.min_age > 0) {
      auto threshold = presentations::age_threshold(config_.today, config_.min_age);
      bool ok = false;
      for (const auto& p : bundle.predicates) {
        if (p.presentation == vp.id() && p.attribute == "birthday" && p.threshold == threshold) {
          ok = ok || presentations::verify_predicate(registry, vp, p, threshold, o.nonce);
        }
      }
      if (!ok) fail_with("predicate");
    }
    vp_pu_[order_id] = vp;
    enc_ssn_[order_id] = std::get<crypto::ElGamalCiphertext>(ua->ciphertext);
    transition(order_id, OrderState::kIdentityVerified, now_us);
    return true;
  } catch (const std::exception&) {
    transition(order_id, OrderState::kFailed, now_us, cause);
    return false;
  }
}

std::optional<json> Platform::handle_bank_bundle(const std::string& order_id,
                                                 const json& bundle_json,
                                                 const ledger::Registry& registry,
                                                 std::int64_t now_us, std::string* bank_name) {
  auto& o = order(order_id);
  if (o.state != OrderState::kIdentityVerified) return std::nullopt;
  std::string cause = "bank-credential";
  try {
    auto bundle = bundle_json.get<PresentationBundle>();
    auto fail_with = [&](std::string c) {
      cause = std::move(c);
      throw Error(ErrorCode::kVerificationFailed, cause);
    };
    if (bundle.nonce != o.nonce || bundle.presentations.size() != 1) fail_with("bank-credential");
    const auto& vp = bundle.presentations.front();
    auto name = vp.disclosed.find("bank_name");
    if (name == vp.disclosed.end() || vp.definition_id == issuer_.definition.id ||
        !std::holds_alternative<std::string>(name->second.raw) ||
        !vp.commitments.contains("ssn") ||
        !presentations::verify_presentation(registry, vp, o.nonce)) {
      fail_with("bank-credential");
    }
    const auto& bank = std::get<std::string>(name->second.raw);
    // Proof_eq: the SSN behind VP_bu is the one behind VP_pu.
    const auto& vp_pu = vp_pu_.at(order_id);
    bool eq = false;
    for (const auto& e : bundle.equalities) {
      if (e.presentation_a == vp_pu.id() && e.attribute_a == "ssn" &&
          e.presentation_b == vp.id() && e.attribute_b == "ssn") {
        eq = eq || presentations::verify_equality(registry, vp_pu, vp, e, o.nonce);
      }
    }
    if (!eq) fail_with("equality");
    std::string key_id = "bank-enc:" + bank;
    if (!registry.contains(ledger::EntryKind::kEncryptionKey, key_id)) fail_with("bank-unknown");
    auto bank_pk = fetch_encryption_key(registry, key_id);
    const presentations::VerifiableEncryptionProof* bu = nullptr;
    for (const auto& e : bundle.encryptions) {
      if (e.presentation == vp.id() && e.attribute == "account" && e.key_id == key_id) bu = &e;
    }
    if (!bu || !presentations::verify_verifiable_encryption(registry, vp, *bu, bank_pk, o.nonce)) {
      fail_with("bank-credential");
    }
    if (bank_name) *bank_name = bank;
    return json{{"order_id", order_id},
                {"nonce", o.nonce},
                {"fiat_amount", o.fiat_amount},
                {"payee_bank", config_.bank},
                {"payee_account", config_.account},
                {"presentation", vp},
                {"encryption", *bu}};
  } catch (const std::exception&) {
    transition(order_id, OrderState::kFailed, now_us, cause);
    return std::nullopt;
  }
}

std::optional<json> Platform::handle_baseline_bank_details(const std::string& order_id,
                                                           const json& details,
                                                           std::int64_t now_us,
                                                           std::string* bank_name) {
  auto& o = order(order_id);
  if (o.state != OrderState::kIdentityVerified) return std::nullopt;
  try {
    auto bank = details.at("bank").get<std::string>();
    auto account = details.at("account").get<std::int64_t>();
    auto& book = baseline_books_.at(order_id);
    book["bank"] = bank;
    book["account"] = account;
    if (bank_name) *bank_name = bank;
    return json{{"order_id", order_id},
                {"account", account},
                {"ssn", book.at("pii").at("ssn")},
                {"name", book.at("pii").at("name")},
                {"fiat_amount", o.fiat_amount},
                {"payee_bank", config_.bank},
                {"payee_account", config_.account}};
  } catch (const std::exception&) {
    transition(order_id, OrderState::kFailed, now_us, "bank");
    return std::nullopt;
  }
}

void Platform::handle_bank_verdict(const std::string& order_id, const json& verdict,
                                   std::int64_t now_us) {
  if (order(order_id).state != OrderState::kIdentityVerified) return;
  if (verdict.value("ok", false)) {
    transition(order_id, OrderState::kBankVerified, now_us);
  } else {
    transition(order_id, OrderState::kFailed, now_us, verdict.value("cause", std::string("bank")));
  }
}

void Platform::handle_receipt(const std::string& order_id, const json& receipt,
                              std::int64_t now_us) {
  if (order(order_id).state != OrderState::kBankVerified) return;
  if (receipt.value("status", std::string()) == "settled" &&
      receipt.value("fiat_amount", std::int64_t{-1}) == order(order_id).fiat_amount) {
    transition(order_id, OrderState::kFiatSettled, now_us);
  } else {
    transition(order_id, OrderState::kFailed, now_us, receipt.value("cause", std::string("bank")));
  }
}

ExchangeOrder& Platform::order(const std::string& id) {
  auto it = orders_.find(id);
  enforce(it != orders_.end(), ErrorCode::kUnknownId, "unknown order " + id);
  return it->second;
}

void Platform::transition(const std::string& order_id, OrderState to, std::int64_t now_us,
                          std::string cause) {
  auto& o = order(order_id);
  enforce(TransitionLog::legal(o.state, to), ErrorCode::kStateViolation,
          "illegal transition " + std::string(to_string(o.state)) + " -> " +
              std::string(to_string(to)));
  log_.record(order_id, o.state, to, now_us);
  o.state = to;
  if (to == OrderState::kFailed) o.failure = std::move(cause);
}

ExchangeRecord Platform::make_record(const std::string& order_id, std::int64_t now_us) const {
  const auto& o = orders_.at(order_id);
  ExchangeRecord r;
  r.order_id = order_id;
  r.fiat_amount = o.fiat_amount;
  r.timestamp_us = now_us;
  if (auto it = enc_ssn_.find(order_id); it != enc_ssn_.end()) r.enc_ssn = it->second;
  if (auto it = baseline_books_.find(order_id); it != baseline_books_.end()) {
    r.plaintext_ssn = it->second.at("pii").at("ssn").get<std::int64_t>();
  }
  return r;
}

json Platform::books() const {
  json orders = json::array();
  for (const auto& [id, o] : orders_) {
    orders.push_back({{"order_id", id},
                      {"state", to_string(o.state)},
                      {"fiat_amount", o.fiat_amount},
                      {"crypto_amount", o.crypto_amount},
                      {"addresses", o.user_addresses}});
  }
  json regs = json::array();
  for (const auto& [nonce, pii] : registrations_) regs.push_back({{"nonce", nonce}, {"pii", pii}});
  json baseline = json::object();
  for (const auto& [id, b] : baseline_books_) baseline[id] = b;
  return json{{"orders", orders}, {"registrations", regs}, {"baseline", baseline}};
}

// --- User -------------------------------------------------------------------

User::User(std::string id_, PiiRecord pii_, crypto::Rng rng_)
    : id(std::move(id_)),
      pii(std::move(pii_)),
      wallet(credentials::LinkSecret::generate(rng_)),
      rng(std::move(rng_)) {}

std::vector<std::string> User::fresh_addresses(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_address(rng));
  return out;
}

}  // namespace fcguard::parties
