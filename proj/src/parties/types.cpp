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

#include "fcguard/parties/types.hpp"

#include <array>

#include "fcguard/error.hpp"

namespace fcguard::parties {

bool valid_calendar_date(std::int64_t yyyymmdd) {
  if (yyyymmdd <= 0) return false;
  std::int64_t year = yyyymmdd / 10000;
  std::int64_t month = yyyymmdd / 100 % 100;
  std::int64_t day = yyyymmdd % 100;
  if (year < 1 || year > 9999 || month < 1 || month > 12 || day < 1) return false;
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  int limit = kDays[static_cast<std::size_t>(month - 1)] + (month == 2 && leap ? 1 : 0);
  return day <= limit;
}

bool pii_valid(const PiiRecord& pii) {
  return !pii.name.empty() && pii.ssn >= 1 && pii.ssn <= 999999999 &&
         valid_calendar_date(pii.birthday);
}

namespace {

constexpr std::array<std::pair<OrderState, std::string_view>, 7> kStateNames{{
    {OrderState::kCreated, "created"},
    {OrderState::kIdentityVerified, "identity-verified"},
    {OrderState::kBankVerified, "bank-verified"},
    {OrderState::kFiatSettled, "fiat-settled"},
    {OrderState::kCryptoSent, "crypto-sent"},
    {OrderState::kComplete, "complete"},
    {OrderState::kFailed, "failed"},
}};

}  // namespace

std::string_view to_string(OrderState s) {
  for (const auto& [state, name] : kStateNames) {
    if (state == s) return name;
  }
  return "unknown";
}

OrderState parse_order_state(std::string_view name) {
  for (const auto& [state, n] : kStateNames) {
    if (n == name) return state;
  }
  fail(ErrorCode::kParseError, "unknown order state: " + std::string(name));
}

bool TransitionLog::legal(OrderState from, OrderState to) {
  if (from == OrderState::kComplete || from == OrderState::kFailed) return false;
  if (to == OrderState::kFailed) return true;
  return static_cast<int>(to) == static_cast<int>(from) + 1;
}

void TransitionLog::record(const std::string& order_id, OrderState from, OrderState to,
                           std::int64_t time_us) {
  if (!legal(from, to)) ++violations_;
  log_.push_back({order_id, from, to, time_us});
}

std::string_view to_string(AuditVerdict v) {
  return v == AuditVerdict::kCompliant ? "compliant" : "deanonymized";
}

void to_json(json& j, const PiiRecord& p) {
  j = json{{"name", p.name}, {"birthday", p.birthday}, {"ssn", p.ssn}};
}

void from_json(const json& j, PiiRecord& p) {
  p.name = j.at("name").get<std::string>();
  p.birthday = j.at("birthday").get<std::int64_t>();
  p.ssn = j.at("ssn").get<std::int64_t>();
}

void to_json(json& j, const ExchangeRecord& r) {
  j = json{{"order_id", r.order_id}, {"fiat_amount", r.fiat_amount},
           {"timestamp_us", r.timestamp_us}};
  if (r.enc_ssn) j["enc_ssn"] = *r.enc_ssn;
  if (r.plaintext_ssn) j["ssn"] = *r.plaintext_ssn;
}

void from_json(const json& j, ExchangeRecord& r) {
  r.order_id = j.at("order_id").get<std::string>();
  r.fiat_amount = j.at("fiat_amount").get<std::int64_t>();
  r.timestamp_us = j.at("timestamp_us").get<std::int64_t>();
  r.enc_ssn.reset();
  r.plaintext_ssn.reset();
  if (j.contains("enc_ssn")) r.enc_ssn = j.at("enc_ssn").get<crypto::ElGamalCiphertext>();
  if (j.contains("ssn")) r.plaintext_ssn = j.at("ssn").get<std::int64_t>();
}

void to_json(json& j, const UserReport& r) {
  j = json{{"order_id", r.order_id}, {"fiat_amount", r.fiat_amount}};
}

void from_json(const json& j, UserReport& r) {
  r.order_id = j.at("order_id").get<std::string>();
  r.fiat_amount = j.at("fiat_amount").get<std::int64_t>();
}

void to_json(json& j, const AuditOutcome& o) {
  j = json{{"order_id", o.order_id}, {"verdict", to_string(o.verdict)}};
  if (o.ssn) j["ssn"] = *o.ssn;
}

}  // namespace fcguard::parties
