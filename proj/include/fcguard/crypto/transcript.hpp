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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/canonical.hpp"
#include "fcguard/crypto/hash.hpp"

namespace fcguard::crypto {

// Fiat-Shamir transcript. The hashed input is frame(label) || frame(m1) ||
// ... where frame(x) = u32be(|x|) || x; the challenge is the top `bits`
// bits of its SHA-256 digest.
class Transcript {
 public:
  explicit Transcript(std::string_view label);

  Transcript& absorb(std::span<const std::uint8_t> message);
  Transcript& absorb(std::string_view message);
  Transcript& absorb(const Int& value);
  Transcript& absorb_json(const json& value);
  Transcript& absorb(const std::string& message) { return absorb(std::string_view(message)); }
  Transcript& absorb(const char* message) { return absorb(std::string_view(message)); }
  Transcript& absorb(const std::vector<std::uint8_t>& message) {
    return absorb(std::span<const std::uint8_t>(message));
  }

  Digest digest() const;
  // bits must be in [1, 256].
  Int challenge(unsigned bits) const;

 private:
  std::vector<std::uint8_t> buffer_;
};

Int transcript_challenge(std::string_view label, std::span<const std::string> messages,
                         unsigned bits);

// Deterministic expansion of (label, data) to a `bits`-bit integer.
Int expand_hash(std::string_view label, std::string_view data, unsigned bits);

}  // namespace fcguard::crypto
