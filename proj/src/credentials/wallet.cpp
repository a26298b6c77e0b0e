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

#include "fcguard/credentials/wallet.hpp"

#include <fstream>
#include <sstream>

#include "fcguard/crypto/hash.hpp"
#include "fcguard/error.hpp"

namespace fcguard::credentials {

namespace {

constexpr unsigned kSealIterations = 20000;

std::string hex(const std::vector<std::uint8_t>& bytes) { return crypto::to_hex(bytes); }

std::vector<std::uint8_t> unhex(const json& j, const char* key) {
  return crypto::from_hex(j.at(key).get<std::string>());
}

}  // namespace

const Credential& Wallet::store(Credential credential) {
  auto id = credential.definition_id;
  auto [it, inserted] = credentials_.insert_or_assign(std::move(id), std::move(credential));
  return it->second;
}

const Credential* Wallet::find(std::string_view definition_id) const {
  auto it = credentials_.find(definition_id);
  return it == credentials_.end() ? nullptr : &it->second;
}

const Credential& Wallet::get(std::string_view definition_id) const {
  const auto* c = find(definition_id);
  enforce(c != nullptr, ErrorCode::kUnknownId,
          "wallet holds no credential for " + std::string(definition_id));
  return *c;
}

std::vector<std::string> Wallet::definition_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, cred] : credentials_) ids.push_back(id);
  return ids;
}

std::string Wallet::seal(std::string_view passphrase, crypto::Rng& rng) const {
  json body{{"link_secret", secret_.value}, {"credentials", json::array()}};
  for (const auto& [id, cred] : credentials_) body["credentials"].push_back(cred);
  std::string plain = crypto::canonical_dump(body);
  std::vector<std::uint8_t> salt(16), iv(12);
  rng.fill(salt);
  rng.fill(iv);
  auto box = crypto::seal(passphrase, crypto::as_bytes(plain), salt, iv, kSealIterations);
  json env{{"format", "fcguard-wallet/1"},
           {"kdf", "pbkdf2-hmac-sha256"},
           {"cipher", "aes-256-gcm"},
           {"iterations", box.iterations},
           {"salt", hex(box.salt)},
           {"iv", hex(box.iv)},
           {"ciphertext", hex(box.ciphertext)},
           {"tag", hex(box.tag)}};
  return crypto::canonical_dump(env);
}

Wallet Wallet::unseal(std::string_view passphrase, std::string_view envelope) {
  crypto::SealedBox box;
  try {
    json env = json::parse(envelope);
    enforce(env.at("format") == "fcguard-wallet/1", ErrorCode::kParseError,
            "unsupported wallet format");
    box.iterations = env.at("iterations").get<unsigned>();
    box.salt = unhex(env, "salt");
    box.iv = unhex(env, "iv");
    box.ciphertext = unhex(env, "ciphertext");
    box.tag = unhex(env, "tag");
  } catch (const json::exception& e) {
    fail(ErrorCode::kDecryptionFailure, std::string("damaged wallet envelope: ") + e.what());
  } catch (const Error& e) {
    fail(ErrorCode::kDecryptionFailure, std::string("damaged wallet envelope: ") + e.what());
  }
  auto plain = crypto::open(passphrase, box);
  json body = json::parse(plain.begin(), plain.end());
  Wallet w(LinkSecret{body.at("link_secret").get<Int>()});
  for (const auto& c : body.at("credentials")) w.store(c.get<Credential>());
  return w;
}

void Wallet::save(const std::filesystem::path& path, std::string_view passphrase,
                  crypto::Rng& rng) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  enforce(out.good(), ErrorCode::kIo, "cannot write wallet " + path.string());
  out << seal(passphrase, rng);
  enforce(out.good(), ErrorCode::kIo, "short write on wallet " + path.string());
}

Wallet Wallet::load(const std::filesystem::path& path, std::string_view passphrase) {
  std::ifstream in(path, std::ios::binary);
  enforce(in.good(), ErrorCode::kIo, "cannot read wallet " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return unseal(passphrase, ss.str());
}

const Credential& holder_verify_and_store(Wallet& wallet, const ledger::Registry& registry,
                                          const Credential& issued,
                                          const PendingRequest& pending) {
  return wallet.store(holder_complete(registry, issued, pending, wallet.link_secret()));
}

}  // namespace fcguard::credentials
