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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fcguard/credentials/wallet.hpp"
#include "fcguard/crypto/encryption.hpp"
#include "fcguard/ledger/registry.hpp"
#include "fcguard/parties/address_pool.hpp"
#include "fcguard/parties/types.hpp"
#include "fcguard/presentations/session.hpp"

namespace fcguard::parties {

inline constexpr std::string_view kPlatformName = "platform";
inline constexpr std::string_view kSsaName = "ssa";
inline constexpr std::string_view kAuditorName = "aa";

std::string random_nonce(crypto::Rng& rng);
std::string random_address(crypto::Rng& rng);
// Six decimal digits, zero padded.
std::string mfa_code(crypto::Rng& rng);

void publish_encryption_key(ledger::Registry& registry, const crypto::EncryptionPublicKey& pk);
crypto::EncryptionPublicKey fetch_encryption_key(const ledger::Registry& registry,
                                                 std::string_view key_id);

class Ssa {
 public:
  explicit Ssa(std::vector<PiiRecord> records) : records_(std::move(records)) {}
  // True iff the record is well formed and matches an entry exactly.
  bool verify(const PiiRecord& pii) const;

 private:
  std::vector<PiiRecord> records_;
};

class AuditingAuthority {
 public:
  AuditingAuthority(std::string key_id, crypto::ElGamalKeyPair keys);

  crypto::EncryptionPublicKey public_key() const { return {key_id_, keys_.pub}; }
  void receive_record(ExchangeRecord r) { records_.push_back(std::move(r)); }
  void receive_report(UserReport r) { reports_.push_back(std::move(r)); }
  const std::vector<ExchangeRecord>& records() const { return records_; }
  const std::vector<UserReport>& reports() const { return reports_; }

  // Decrypts one SSN ciphertext; counted.
  std::int64_t decrypt(const crypto::ElGamalCiphertext& ct);
  std::uint64_t decryptions() const { return decryptions_; }

 private:
  std::string key_id_;
  crypto::ElGamalKeyPair keys_;
  std::unique_ptr<crypto::ElGamalDecryptor> decryptor_;  // built on first use
  std::vector<ExchangeRecord> records_;
  std::vector<UserReport> reports_;
  std::uint64_t decryptions_ = 0;
};

// A record is compliant when a user report names the same order and fiat
// amount. Everything else is de-anonymized, decrypting only when needed.
std::vector<AuditOutcome> audit(AuditingAuthority& authority,
                                const std::vector<ExchangeRecord>& records,
                                const std::vector<UserReport>& reports);

struct AccountRecord {
  std::int64_t number = 0;
  std::int64_t owner_ssn = 0;
  std::int64_t balance = 0;
  std::string phone;  // party id that receives MFA codes
};

struct BankVerdict {
  bool ok = false;
  std::string cause;
};

class Bank {
 public:
  Bank(std::string name, credentials::Issuer issuer, crypto::PaillierKeyPair enc,
       std::vector<AccountRecord> accounts);

  const std::string& name() const { return name_; }
  const credentials::Issuer& issuer() const { return issuer_; }
  std::string key_id() const { return "bank-enc:" + name_; }
  crypto::EncryptionPublicKey public_key() const { return {key_id(), enc_.pub}; }

  const std::map<std::int64_t, AccountRecord>& accounts() const { return accounts_; }
  std::int64_t total_balance() const;
  void credit(std::int64_t account, std::int64_t amount);

  // Issues the account credential only for a customer the books know.
  credentials::Credential issue_account_credential(const credentials::CredentialRequest& request,
                                                   std::string_view nonce, std::int64_t account,
                                                   std::int64_t ssn, crypto::Rng& rng) const;

  // Step 2: verifies M_pb, decrypts the account and arms an MFA challenge.
  struct MfaChallenge {
    std::string phone;
    std::string code;
  };
  BankVerdict handle_mpb(const json& mpb, const ledger::Registry& registry, crypto::Rng& rng,
                         MfaChallenge* challenge);
  // One attempt per order.
  BankVerdict handle_mfa(const std::string& order_id, const std::string& code);
  // Baseline: the platform names the account and owner in the clear.
  BankVerdict handle_baseline_debit(const json& request);
  // Step 3: moves the fiat. Returns the receipt on success.
  BankVerdict settle(const std::string& order_id, std::int64_t now_us, json* receipt);

  // Orders whose fiat actually moved.
  const std::set<std::string>& settled_orders() const { return settled_; }

 private:
  struct Authorization {
    std::int64_t account = 0;
    std::int64_t fiat_amount = 0;
    std::string code;
    bool mfa_done = false;
    bool approved = false;
  };

  std::string name_;
  credentials::Issuer issuer_;
  crypto::PaillierKeyPair enc_;
  std::map<std::int64_t, AccountRecord> accounts_;
  std::map<std::string, Authorization> pending_;
  std::set<std::string> settled_;
};

struct PlatformConfig {
  std::int64_t rate = 10;          // fiat minor units per crypto unit
  std::int64_t today = 20250101;   // YYYYMMDD
  unsigned min_age = 0;            // 0 disables the age predicate
  std::string bank;                // where the platform banks
  std::int64_t account = 0;
  std::string treasury = "platform-treasury";
};

class Platform {
 public:
  Platform(credentials::Issuer issuer, PlatformConfig config, AddressPool pool);

  const credentials::Issuer& issuer() const { return issuer_; }
  const PlatformConfig& config() const { return config_; }
  AddressPool& pool() { return pool_; }
  const AddressPool& pool() const { return pool_; }

  // Registration. The platform learns the PII here by design.
  credentials::Credential register_user(const PiiRecord& pii,
                                        const credentials::CredentialRequest& request,
                                        std::string_view nonce, crypto::Rng& rng);
  // Baseline registration returns a login token.
  std::string baseline_register(const std::string& user_id, const PiiRecord& pii,
                                crypto::Rng& rng);
  std::size_t registered() const { return registered_; }

  // Step 1. Creates the order (failing it at once on address reuse) and
  // returns the quote message.
  json handle_exchange_request(const json& request, std::int64_t now_us, crypto::Rng& rng);
  json handle_baseline_login(const json& request, std::int64_t now_us, crypto::Rng& rng);
  bool handle_identity_bundle(const std::string& order_id, const json& bundle,
                              const ledger::Registry& registry, std::string_view aa_key_id,
                              std::int64_t now_us);
  // Step 2. Returns M_pb for the bank, or nothing if the order failed.
  std::optional<json> handle_bank_bundle(const std::string& order_id, const json& bundle,
                                         const ledger::Registry& registry, std::int64_t now_us,
                                         std::string* bank_name);
  std::optional<json> handle_baseline_bank_details(const std::string& order_id,
                                                   const json& details, std::int64_t now_us,
                                                   std::string* bank_name);
  void handle_bank_verdict(const std::string& order_id, const json& verdict,
                           std::int64_t now_us);
  void handle_receipt(const std::string& order_id, const json& receipt, std::int64_t now_us);

  ExchangeOrder& order(const std::string& id);
  const std::map<std::string, ExchangeOrder>& orders() const { return orders_; }
  void transition(const std::string& order_id, OrderState to, std::int64_t now_us,
                  std::string cause = {});
  const TransitionLog& transitions() const { return log_; }

  // Crypto owed but not yet on chain.
  std::int64_t reserved() const { return reserved_; }
  void reserve(std::int64_t amount) { reserved_ += amount; }
  void release(std::int64_t amount) { reserved_ -= amount; }

  ExchangeRecord make_record(const std::string& order_id, std::int64_t now_us) const;

  // Everything the platform keeps in its own database, as JSON.
  json books() const;

 private:
  credentials::Issuer issuer_;
  PlatformConfig config_;
  AddressPool pool_;
  std::map<std::string, ExchangeOrder> orders_;
  std::set<std::string> used_addresses_;
  TransitionLog log_;
  std::int64_t reserved_ = 0;
  std::size_t registered_ = 0;
  // Per order: the verified VP_pu and Enc_aa(SSN).
  std::map<std::string, presentations::Presentation> vp_pu_;
  std::map<std::string, crypto::ElGamalCiphertext> enc_ssn_;
  // Registration linkage (PII <-> issuance nonce), and baseline state.
  std::map<std::string, PiiRecord> registrations_;
  std::map<std::string, std::pair<std::string, PiiRecord>> tokens_;  // token -> (user, pii)
  std::map<std::string, json> baseline_books_;
};

struct User {
  std::string id;
  PiiRecord pii;
  std::string bank;
  std::int64_t account = 0;
  std::int64_t bank_ssn = 0;
  std::string self_report = "honest";  // honest | wrong | none
  credentials::Wallet wallet;
  crypto::Rng rng;
  bool registered = false;
  std::string baseline_token;
  std::vector<json> receipts;
  std::vector<std::string> sms;
  // Last bundles sent, kept so a thief can replay them.
  std::optional<json> last_identity_bundle;
  std::optional<json> last_bank_bundle;

  User(std::string id_, PiiRecord pii_, crypto::Rng rng_);
  std::vector<std::string> fresh_addresses(std::size_t n);
};

}  // namespace fcguard::parties
