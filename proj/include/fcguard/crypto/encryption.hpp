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

#include <string>
#include <string_view>
#include <variant>

#include "fcguard/crypto/elgamal.hpp"
#include "fcguard/crypto/paillier.hpp"

namespace fcguard::crypto {

enum class EncryptionScheme { kElGamal, kPaillier };

std::string_view to_string(EncryptionScheme s);

struct EncryptionPublicKey {
  std::string key_id;
  std::variant<ElGamalPublicKey, PaillierPublicKey> key;

  EncryptionScheme scheme() const {
    return std::holds_alternative<ElGamalPublicKey>(key) ? EncryptionScheme::kElGamal
                                                         : EncryptionScheme::kPaillier;
  }
};

struct EncryptionKeyPair {
  std::string key_id;
  std::variant<ElGamalKeyPair, PaillierKeyPair> keys;

  EncryptionScheme scheme() const {
    return std::holds_alternative<ElGamalKeyPair>(keys) ? EncryptionScheme::kElGamal
                                                        : EncryptionScheme::kPaillier;
  }
  EncryptionPublicKey public_key() const;
};

// Randomness is never kept in the ciphertext.
using Ciphertext = std::variant<ElGamalCiphertext, PaillierCiphertext>;

inline EncryptionScheme scheme_of(const Ciphertext& ct) {
  return std::holds_alternative<ElGamalCiphertext>(ct) ? EncryptionScheme::kElGamal
                                                       : EncryptionScheme::kPaillier;
}

void to_json(json& j, const EncryptionPublicKey& k);
void from_json(const json& j, EncryptionPublicKey& k);
json ciphertext_to_json(const Ciphertext& ct);
Ciphertext ciphertext_from_json(const json& j);

}  // namespace fcguard::crypto
