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
#include <utility>
#include <vector>

#include "fcguard/crypto/rng.hpp"

namespace fcguard::parties {

struct PoolConfig {
  std::int64_t max_delay_us = 600'000'000;  // D
  std::uint32_t rotation_epoch = 10;        // orders per epoch
  std::uint32_t addresses_per_epoch = 3;
};

struct PendingTransfer {
  std::string order_id;
  std::string from;  // pool address
  std::string to;    // user address
  std::int64_t amount = 0;
  std::int64_t enqueue_us = 0;
  std::int64_t release_us = 0;
};

// Uniformly random composition of `amount` into at most `parts` positive
// pieces (fewer when amount < parts).
std::vector<std::int64_t> uniform_partition(std::int64_t amount, std::size_t parts,
                                            crypto::Rng& rng);

// Platform-owned sending addresses. Each epoch gets a fresh disjoint set;
// every (pool, user) pair is used at most once.
class AddressPool {
 public:
  AddressPool(PoolConfig config, std::string prefix);

  std::vector<PendingTransfer> schedule(const std::string& order_id, std::int64_t amount,
                                        const std::vector<std::string>& user_addresses,
                                        std::int64_t now_us, crypto::Rng& rng);

  std::uint64_t epoch() const { return epoch_; }
  std::vector<std::string> addresses(std::uint64_t epoch) const;
  const PoolConfig& config() const { return config_; }
  // Pair -> epoch of use.
  const std::map<std::pair<std::string, std::string>, std::uint64_t>& used_pairs() const {
    return used_;
  }

 private:
  PoolConfig config_;
  std::string prefix_;
  std::uint64_t epoch_ = 0;
  std::uint32_t orders_in_epoch_ = 0;
  std::map<std::pair<std::string, std::string>, std::uint64_t> used_;
};

}  // namespace fcguard::parties
