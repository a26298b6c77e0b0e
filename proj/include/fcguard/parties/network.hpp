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
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/crypto/canonical.hpp"

namespace fcguard::parties {

using crypto::json;

// Simulated time in microseconds. Events run in (time, insertion) order.
class EventQueue {
 public:
  std::int64_t now_us() const { return now_us_; }
  void advance(std::int64_t us);
  void at(std::int64_t time_us, std::function<void()> fn);
  // Runs every event scheduled at or before `time_us`, then parks the clock there.
  void run_until(std::int64_t time_us);
  void drain();
  std::size_t pending() const { return heap_.size(); }

 private:
  struct Event {
    std::int64_t time_us;
    std::uint64_t seq;
    std::function<void()> fn;
    bool operator>(const Event& o) const {
      return time_us != o.time_us ? time_us > o.time_us : seq > o.seq;
    }
  };
  void pop_one();

  std::int64_t now_us_ = 0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap_;
};

struct MessageRecord {
  std::uint64_t seq = 0;
  std::int64_t time_us = 0;
  std::string from;
  std::string to;
  std::string kind;
  std::string phase;
  std::string payload;  // canonical JSON bytes as delivered
};

// Every inter-party message goes through here; receivers only ever see
// the serialized bytes.
class Network {
 public:
  explicit Network(const EventQueue& clock) : clock_(&clock) {}

  const std::string& send(std::string from, std::string to, std::string kind, std::string phase,
                          const json& body);
  const std::vector<MessageRecord>& messages() const { return log_; }

  // Concatenated payloads received by `party`, optionally restricted to phases.
  std::string received_bytes(std::string_view party,
                             const std::set<std::string, std::less<>>& phases = {}) const;
  std::string sent_bytes(std::string_view party) const;
  std::uint64_t bytes_total() const { return bytes_; }

  // One JSON object per line with payload digests, not payloads.
  std::string event_log_jsonl() const;

 private:
  const EventQueue* clock_;
  std::vector<MessageRecord> log_;
  std::uint64_t bytes_ = 0;
};

}  // namespace fcguard::parties
