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

#include "fcguard/crypto/encryption.hpp"

#include "fcguard/error.hpp"

namespace fcguard::crypto {

std::string_view to_string(EncryptionScheme s) {
  return s == EncryptionScheme::kElGamal ? "elgamal" : "paillier";
}

EncryptionPublicKey EncryptionKeyPair::public_key() const {
  if (const auto* eg = std::get_if<ElGamalKeyPair>(&keys)) return {key_id, eg->pub};
  return {key_id, std::get<PaillierKeyPair>(keys).pub};
}

void to_json(json& j, const EncryptionPublicKey& k) {
  j = json{{"key_id", k.key_id}, {"scheme", to_string(k.scheme())}};
  std::visit([&](const auto& key) { j["key"] = key; }, k.key);
}

void from_json(const json& j, EncryptionPublicKey& k) {
  k.key_id = j.at("key_id").get<std::string>();
  auto scheme = j.at("scheme").get<std::string>();
  if (scheme == "elgamal") {
    k.key = j.at("key").get<ElGamalPublicKey>();
  } else if (scheme == "paillier") {
    k.key = j.at("key").get<PaillierPublicKey>();
  } else {
    fail(ErrorCode::kParseError, "unknown encryption scheme: " + scheme);
  }
}

json ciphertext_to_json(const Ciphertext& ct) {
  json j;
  std::visit([&](const auto& c) { j = c; }, ct);
  j["scheme"] = to_string(scheme_of(ct));
  return j;
}

Ciphertext ciphertext_from_json(const json& j) {
  auto scheme = j.at("scheme").get<std::string>();
  if (scheme == "elgamal") return j.get<ElGamalCiphertext>();
  if (scheme == "paillier") return j.get<PaillierCiphertext>();
  fail(ErrorCode::kParseError, "unknown ciphertext scheme: " + scheme);
}

}  // namespace fcguard::crypto
