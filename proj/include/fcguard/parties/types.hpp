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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/crypto/elgamal.hpp"

namespace fcguard::parties {

using crypto::json;

struct PiiRecord {
  std::string name;
  std::int64_t birthday = 0;  // YYYYMMDD
  std::int64_t ssn = 0;
  bool operator==(const PiiRecord&) const = default;
};

bool valid_calendar_date(std::int64_t yyyymmdd);
// SSN in [1, 999999999], birthday a real date, non-empty name.
bool pii_valid(const PiiRecord& pii);

enum class OrderState {
  kCreated,
  kIdentityVerified,
  kBankVerified,
  kFiatSettled,
  kCryptoSent,
  kComplete,
  kFailed,
};

std::string_view to_string(OrderState s);
OrderState parse_order_state(std::string_view name);

struct ExchangeOrder {
  std::string id;
  std::string asset;
  std::int64_t crypto_amount = 0;
  std::int64_t fiat_amount = 0;
  std::int64_t rate = 0;
  std::string nonce;
  OrderState state = OrderState::kCreated;
  std::string failure;  // cause when state == kFailed
  std::vector<std::string> user_addresses;
};

struct Transition {
  std::string order_id;
  OrderState from;
  OrderState to;
  std::int64_t time_us;
};

// Records every order state change and flags any that skips a step or
// leaves a terminal state.
class TransitionLog {
 public:
  static bool legal(OrderState from, OrderState to);
  void record(const std::string& order_id, OrderState from, OrderState to, std::int64_t time_us);
  bool safe() const { return violations_ == 0; }
  std::size_t violations() const { return violations_; }
  const std::vector<Transition>& transitions() const { return log_; }

 private:
  std::vector<Transition> log_;
  std::size_t violations_ = 0;
};

// What the platform hands the auditing authority. Crypto addresses and
// transfer details never appear here. In baseline mode the plaintext SSN
// is carried instead of the ciphertext.
struct ExchangeRecord {
  std::string order_id;
  std::int64_t fiat_amount = 0;
  std::int64_t timestamp_us = 0;
  std::optional<crypto::ElGamalCiphertext> enc_ssn;
  std::optional<std::int64_t> plaintext_ssn;
};

struct UserReport {
  std::string order_id;
  std::int64_t fiat_amount = 0;
};

enum class AuditVerdict { kCompliant, kDeanonymized };

std::string_view to_string(AuditVerdict v);

struct AuditOutcome {
  std::string order_id;
  AuditVerdict verdict = AuditVerdict::kCompliant;
  std::optional<std::int64_t> ssn;
};

void to_json(json& j, const PiiRecord& p);
void from_json(const json& j, PiiRecord& p);
void to_json(json& j, const ExchangeRecord& r);
void from_json(const json& j, ExchangeRecord& r);
void to_json(json& j, const UserReport& r);
void from_json(const json& j, UserReport& r);
void to_json(json& j, const AuditOutcome& o);

}  // namespace fcguard::parties
