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

#include "fcguard/ledger/registry.hpp"

#include "fcguard/error.hpp"

namespace fcguard::ledger {

std::string_view to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::kSchema: return "schema";
    case EntryKind::kCredentialDefinition: return "credential-definition";
    case EntryKind::kEncryptionKey: return "encryption-key";
    case EntryKind::kParameters: return "parameters";
  }
  return "unknown";
}

EntryKind parse_entry_kind(std::string_view name) {
  for (auto kind : {EntryKind::kSchema, EntryKind::kCredentialDefinition,
                    EntryKind::kEncryptionKey, EntryKind::kParameters}) {
    if (to_string(kind) == name) return kind;
  }
  fail(ErrorCode::kParseError, "unknown registry entry kind: " + std::string(name));
}

std::uint64_t Registry::put(std::string id, EntryKind kind, std::string payload) {
  auto key = std::make_pair(kind, id);
  enforce(!index_.contains(key), ErrorCode::kDuplicateId,
          "registry already holds " + std::string(to_string(kind)) + " '" + id + "'");
  std::uint64_t seq = log_.size() + 1;
  index_.emplace(std::move(key), log_.size());
  log_.push_back(RegistryEntry{std::move(id), kind, std::move(payload), seq});
  return seq;
}

const RegistryEntry& Registry::get(EntryKind kind, std::string_view id) const {
  auto it = index_.find(std::make_pair(kind, std::string(id)));
  enforce(it != index_.end(), ErrorCode::kUnknownId,
          "registry has no " + std::string(to_string(kind)) + " '" + std::string(id) + "'");
  return log_[it->second];
}

json Registry::get_json(EntryKind kind, std::string_view id) const {
  return json::parse(get(kind, id).payload);
}

bool Registry::contains(EntryKind kind, std::string_view id) const {
  return index_.contains(std::make_pair(kind, std::string(id)));
}

Registry Registry::replay(const std::vector<RegistryEntry>& log) {
  Registry r;
  for (const auto& e : log) {
    auto seq = r.put(e.id, e.kind, e.payload);
    enforce(seq == e.sequence, ErrorCode::kStateViolation, "registry log has a sequence gap");
  }
  return r;
}

void to_json(json& j, const RegistryEntry& e) {
  j = json{{"id", e.id}, {"kind", to_string(e.kind)}, {"payload", e.payload},
           {"sequence", e.sequence}};
}

void from_json(const json& j, RegistryEntry& e) {
  e.id = j.at("id").get<std::string>();
  e.kind = parse_entry_kind(j.at("kind").get<std::string>());
  e.payload = j.at("payload").get<std::string>();
  e.sequence = j.at("sequence").get<std::uint64_t>();
}

}  // namespace fcguard::ledger
