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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fcguard::crypto {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// AES-256-GCM under a PBKDF2-HMAC-SHA256 derived key. Used for data at rest.
struct SealedBox {
  std::vector<std::uint8_t> salt;
  std::vector<std::uint8_t> iv;
  std::vector<std::uint8_t> ciphertext;
  std::vector<std::uint8_t> tag;
  unsigned iterations = 0;
};

SealedBox seal(std::string_view passphrase, std::span<const std::uint8_t> plaintext,
               std::span<const std::uint8_t> salt, std::span<const std::uint8_t> iv,
               unsigned iterations);
// Throws Error(kDecryptionFailure) on a wrong passphrase or tampered box.
std::vector<std::uint8_t> open(std::string_view passphrase, const SealedBox& box);

}  // namespace fcguard::crypto
