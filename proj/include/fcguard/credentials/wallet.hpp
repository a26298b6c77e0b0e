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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fcguard/credentials/issuance.hpp"

namespace fcguard::credentials {

// Holder store: one link secret and the credentials bound to it, at most
// one per definition (a re-issued credential replaces the old one).
class Wallet {
 public:
  explicit Wallet(LinkSecret secret) : secret_(std::move(secret)) {}

  const LinkSecret& link_secret() const { return secret_; }
  const Credential& store(Credential credential);
  const Credential* find(std::string_view definition_id) const;
  // Throws Error(kUnknownId).
  const Credential& get(std::string_view definition_id) const;
  std::size_t size() const { return credentials_.size(); }
  std::vector<std::string> definition_ids() const;

  // Encrypted-at-rest envelope: canonical JSON of the wallet sealed with
  // AES-256-GCM under a passphrase-derived key.
  std::string seal(std::string_view passphrase, crypto::Rng& rng) const;
  // Throws Error(kDecryptionFailure) for a wrong passphrase or damaged file.
  static Wallet unseal(std::string_view passphrase, std::string_view envelope);
  void save(const std::filesystem::path& path, std::string_view passphrase,
            crypto::Rng& rng) const;
  static Wallet load(const std::filesystem::path& path, std::string_view passphrase);

 private:
  LinkSecret secret_;
  std::map<std::string, Credential, std::less<>> credentials_;
};

// Completes and checks an issued credential, then stores it. On failure
// throws Error(kVerificationFailed) and leaves the wallet untouched.
const Credential& holder_verify_and_store(Wallet& wallet, const ledger::Registry& registry,
                                          const Credential& issued, const PendingRequest& pending);

}  // namespace fcguard::credentials
