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

#include "fcguard/parties/address_pool.hpp"

#include <algorithm>
#include <set>

#include "fcguard/error.hpp"

namespace fcguard::parties {

std::vector<std::int64_t> uniform_partition(std::int64_t amount, std::size_t parts,
                                            crypto::Rng& rng) {
  enforce(amount > 0 && parts > 0, ErrorCode::kInvalidArgument, "empty partition");
  std::size_t k = amount < static_cast<std::int64_t>(parts) ? static_cast<std::size_t>(amount)
                                                            : parts;
  // k-1 distinct cut points in [1, amount-1], chosen by rejection.
  std::set<std::int64_t> cuts;
  while (cuts.size() + 1 < k) {
    cuts.insert(1 + static_cast<std::int64_t>(
                        rng.below_u64(static_cast<std::uint64_t>(amount - 1))));
  }
  std::vector<std::int64_t> out;
  std::int64_t prev = 0;
  for (auto c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(amount - prev);
  return out;
}

AddressPool::AddressPool(PoolConfig config, std::string prefix)
    : config_(config), prefix_(std::move(prefix)) {
  enforce(config_.rotation_epoch > 0 && config_.addresses_per_epoch > 0 &&
              config_.max_delay_us >= 0,
          ErrorCode::kInvalidArgument, "bad address pool configuration");
}

std::vector<std::string> AddressPool::addresses(std::uint64_t epoch) const {
  std::vector<std::string> out;
  for (std::uint32_t k = 0; k < config_.addresses_per_epoch; ++k) {
    out.push_back(prefix_ + "-e" + std::to_string(epoch) + "-" + std::to_string(k));
  }
  return out;
}

std::vector<PendingTransfer> AddressPool::schedule(const std::string& order_id,
                                                   std::int64_t amount,
                                                   const std::vector<std::string>& user_addresses,
                                                   std::int64_t now_us, crypto::Rng& rng) {
  enforce(!user_addresses.empty(), ErrorCode::kInvalidArgument, "no destination address");
  if (orders_in_epoch_ == config_.rotation_epoch) {
    ++epoch_;
    orders_in_epoch_ = 0;
  }
  ++orders_in_epoch_;
  auto pool = addresses(epoch_);
  auto pieces = uniform_partition(amount, user_addresses.size(), rng);
  std::vector<PendingTransfer> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    PendingTransfer t;
    t.order_id = order_id;
    t.to = user_addresses[i];
    t.amount = pieces[i];
    t.enqueue_us = now_us;
    t.release_us = now_us + static_cast<std::int64_t>(rng.below_u64(
                                static_cast<std::uint64_t>(config_.max_delay_us) + 1));
    // Pick an unused pool address for this recipient.
    std::vector<std::string> free;
    for (const auto& a : pool) {
      if (!used_.contains({a, t.to})) free.push_back(a);
    }
    enforce(!free.empty(), ErrorCode::kStateViolation, "address pair would repeat");
    t.from = free[rng.below_u64(free.size())];
    used_.emplace(std::make_pair(t.from, t.to), epoch_);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace fcguard::parties
