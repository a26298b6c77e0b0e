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

#include "fcguard/ledger/chain.hpp"

#include "fcguard/error.hpp"

namespace fcguard::ledger {

std::uint64_t Chain::append(const std::string& from, const std::string& to, std::int64_t amount,
                            std::int64_t timestamp_ms) {
  enforce(txs_.empty() || timestamp_ms >= txs_.back().timestamp_ms, ErrorCode::kStateViolation,
          "chain timestamps must not decrease");
  std::uint64_t id = txs_.size() + 1;
  txs_.push_back(ChainTx{id, from, to, amount, timestamp_ms});
  balances_[to] += amount;
  return id;
}

std::uint64_t Chain::genesis(const std::string& address, std::int64_t amount) {
  enforce(amount > 0, ErrorCode::kInvalidArgument, "genesis amount must be positive");
  enforce(address != kGenesisAddress, ErrorCode::kInvalidArgument, "reserved address");
  auto id = append(std::string(kGenesisAddress), address,
                   amount, txs_.empty() ? 0 : txs_.back().timestamp_ms);
  supply_ += amount;
  return id;
}

std::uint64_t Chain::submit(const std::string& from, const std::string& to, std::int64_t amount,
                            std::int64_t timestamp_ms) {
  enforce(amount > 0, ErrorCode::kInvalidArgument, "transfer amount must be positive");
  enforce(from != kGenesisAddress && to != kGenesisAddress, ErrorCode::kInvalidArgument,
          "reserved address");
  enforce(balance(from) >= amount, ErrorCode::kInsufficientFunds,
          "address " + from + " cannot cover the transfer");
  enforce(txs_.empty() || timestamp_ms >= txs_.back().timestamp_ms, ErrorCode::kStateViolation,
          "chain timestamps must not decrease");
  balances_[from] -= amount;
  return append(from, to, amount, timestamp_ms);
}

std::vector<ChainTx> Chain::query(std::string_view address) const {
  std::vector<ChainTx> out;
  for (const auto& tx : txs_) {
    if (tx.from == address || tx.to == address) out.push_back(tx);
  }
  return out;
}

std::int64_t Chain::balance(std::string_view address) const {
  auto it = balances_.find(address);
  return it == balances_.end() ? 0 : it->second;
}

std::int64_t Chain::total_balances() const {
  std::int64_t sum = 0;
  for (const auto& [addr, bal] : balances_) sum += bal;
  return sum;
}

std::string Chain::dump_jsonl() const {
  std::string out;
  for (const auto& tx : txs_) {
    out += json(tx).dump();
    out += '\n';
  }
  return out;
}

void to_json(json& j, const ChainTx& tx) {
  j = json{{"id", tx.id}, {"from", tx.from}, {"to", tx.to}, {"amount", tx.amount},
           {"timestamp_ms", tx.timestamp_ms}};
}

void from_json(const json& j, ChainTx& tx) {
  tx.id = j.at("id").get<std::uint64_t>();
  tx.from = j.at("from").get<std::string>();
  tx.to = j.at("to").get<std::string>();
  tx.amount = j.at("amount").get<std::int64_t>();
  tx.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
}

}  // namespace fcguard::ledger
