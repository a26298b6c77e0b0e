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
#include <string_view>
#include <utility>
#include <vector>

#include "fcguard/crypto/canonical.hpp"

namespace fcguard::ledger {

using crypto::json;

enum class EntryKind { kSchema, kCredentialDefinition, kEncryptionKey, kParameters };

std::string_view to_string(EntryKind kind);
EntryKind parse_entry_kind(std::string_view name);

struct RegistryEntry {
  std::string id;
  EntryKind kind = EntryKind::kSchema;
  std::string payload;
  std::uint64_t sequence = 0;
  bool operator==(const RegistryEntry&) const = default;
};

// Append-only verifiable data registry. Ids are unique per kind and
// sequence numbers start at 1.
class Registry {
 public:
  // Throws Error(kDuplicateId) if (kind, id) is already present.
  std::uint64_t put(std::string id, EntryKind kind, std::string payload);
  // Throws Error(kUnknownId).
  const RegistryEntry& get(EntryKind kind, std::string_view id) const;
  json get_json(EntryKind kind, std::string_view id) const;
  bool contains(EntryKind kind, std::string_view id) const;

  const std::vector<RegistryEntry>& log() const { return log_; }
  std::size_t size() const { return log_.size(); }

  // Rebuilds a registry by re-applying a put log in order.
  static Registry replay(const std::vector<RegistryEntry>& log);

 private:
  std::vector<RegistryEntry> log_;
  std::map<std::pair<EntryKind, std::string>, std::size_t, std::less<>> index_;
};

void to_json(json& j, const RegistryEntry& e);
void from_json(const json& j, RegistryEntry& e);

}  // namespace fcguard::ledger
