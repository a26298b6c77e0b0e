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
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/crypto/canonical.hpp"

namespace fcguard::ledger {

using crypto::json;

// Sender used for genesis allocations, the only way coins are created.
inline constexpr std::string_view kGenesisAddress = "genesis";

struct ChainTx {
  std::uint64_t id = 0;
  std::string from;
  std::string to;
  std::int64_t amount = 0;       // minor units
  std::int64_t timestamp_ms = 0; // simulated clock
  bool operator==(const ChainTx&) const = default;
};

// Account-balance ledger. Transactions are applied in submission order and
// timestamps may not go backwards, so the log is ordered by (timestamp, id).
class Chain {
 public:
  std::uint64_t genesis(const std::string& address, std::int64_t amount);
  // Throws Error(kInvalidArgument) for amount <= 0, Error(kInsufficientFunds)
  // if `from` cannot cover it, Error(kStateViolation) if time runs backwards.
  std::uint64_t submit(const std::string& from, const std::string& to, std::int64_t amount,
                       std::int64_t timestamp_ms);

  std::vector<ChainTx> query(std::string_view address) const;
  std::int64_t balance(std::string_view address) const;
  std::int64_t total_supply() const { return supply_; }
  std::int64_t total_balances() const;
  const std::vector<ChainTx>& transactions() const { return txs_; }

  // One JSON object per line, in log order.
  std::string dump_jsonl() const;

 private:
  std::uint64_t append(const std::string& from, const std::string& to, std::int64_t amount,
                       std::int64_t timestamp_ms);

  std::vector<ChainTx> txs_;
  std::map<std::string, std::int64_t, std::less<>> balances_;
  std::int64_t supply_ = 0;
};

void to_json(json& j, const ChainTx& tx);
void from_json(const json& j, ChainTx& tx);

}  // namespace fcguard::ledger
