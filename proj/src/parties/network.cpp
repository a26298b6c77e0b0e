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

#include "fcguard/parties/network.hpp"

#include "fcguard/crypto/hash.hpp"
#include "fcguard/error.hpp"

namespace fcguard::parties {

void EventQueue::advance(std::int64_t us) {
  enforce(us >= 0, ErrorCode::kInvalidArgument, "clock cannot run backwards");
  run_until(now_us_ + us);
}

void EventQueue::at(std::int64_t time_us, std::function<void()> fn) {
  enforce(time_us >= now_us_, ErrorCode::kStateViolation, "event scheduled in the past");
  heap_.push({time_us, seq_++, std::move(fn)});
}

void EventQueue::pop_one() {
  // Copy out before running: the callback may schedule more events.
  Event ev = heap_.top();
  heap_.pop();
  now_us_ = ev.time_us;
  ev.fn();
}

void EventQueue::run_until(std::int64_t time_us) {
  while (!heap_.empty() && heap_.top().time_us <= time_us) pop_one();
  if (time_us > now_us_) now_us_ = time_us;
}

void EventQueue::drain() {
  while (!heap_.empty()) pop_one();
}

const std::string& Network::send(std::string from, std::string to, std::string kind,
                                 std::string phase, const json& body) {
  MessageRecord rec;
  rec.seq = log_.size();
  rec.time_us = clock_->now_us();
  rec.from = std::move(from);
  rec.to = std::move(to);
  rec.kind = std::move(kind);
  rec.phase = std::move(phase);
  rec.payload = crypto::canonical_dump(body);
  bytes_ += rec.payload.size();
  log_.push_back(std::move(rec));
  return log_.back().payload;
}

std::string Network::received_bytes(std::string_view party,
                                    const std::set<std::string, std::less<>>& phases) const {
  std::string out;
  for (const auto& m : log_) {
    if (m.to != party) continue;
    if (!phases.empty() && !phases.contains(m.phase)) continue;
    out += m.payload;
    out += '\n';
  }
  return out;
}

std::string Network::sent_bytes(std::string_view party) const {
  std::string out;
  for (const auto& m : log_) {
    if (m.from == party) {
      out += m.payload;
      out += '\n';
    }
  }
  return out;
}

std::string Network::event_log_jsonl() const {
  std::string out;
  for (const auto& m : log_) {
    json line{{"seq", m.seq},       {"t_us", m.time_us},  {"from", m.from},
              {"to", m.to},         {"kind", m.kind},     {"phase", m.phase},
              {"bytes", m.payload.size()}, {"digest", crypto::sha256_hex(m.payload)}};
    out += crypto::canonical_dump(line);
    out += '\n';
  }
  return out;
}

}  // namespace fcguard::parties
