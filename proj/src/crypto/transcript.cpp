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

#include "fcguard/crypto/transcript.hpp"

#include "fcguard/error.hpp"

namespace fcguard::crypto {

namespace {

void frame(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> message) {
  auto len = static_cast<std::uint32_t>(message.size());
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  out.insert(out.end(), message.begin(), message.end());
}

}  // namespace

Transcript::Transcript(std::string_view label) { frame(buffer_, as_bytes(label)); }

Transcript& Transcript::absorb(std::span<const std::uint8_t> message) {
  frame(buffer_, message);
  return *this;
}

Transcript& Transcript::absorb(std::string_view message) { return absorb(as_bytes(message)); }

Transcript& Transcript::absorb(const Int& value) { return absorb(int_field_bytes(value)); }

Transcript& Transcript::absorb_json(const json& value) { return absorb(canonical_dump(value)); }

Digest Transcript::digest() const { return sha256(buffer_); }

Int Transcript::challenge(unsigned bits) const {
  enforce(bits >= 1 && bits <= 256, ErrorCode::kInvalidArgument,
          "challenge length must be in [1, 256] bits");
  Digest d = digest();
  Int full = from_magnitude_bytes(d);
  return full >> (256 - bits);
}

Int transcript_challenge(std::string_view label, std::span<const std::string> messages,
                         unsigned bits) {
  Transcript t(label);
  for (const auto& m : messages) t.absorb(std::string_view(m));
  return t.challenge(bits);
}

Int expand_hash(std::string_view label, std::string_view data, unsigned bits) {
  std::vector<std::uint8_t> out;
  for (std::uint32_t block = 0; out.size() * 8 < bits; ++block) {
    Transcript t(label);
    t.absorb(data);
    t.absorb(Int(block));
    Digest d = t.digest();
    out.insert(out.end(), d.begin(), d.end());
  }
  Int value = from_magnitude_bytes(out);
  return value >> (out.size() * 8 - bits);
}

}  // namespace fcguard::crypto
