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
#include <string>
#include <string_view>
#include <variant>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/canonical.hpp"

namespace fcguard::crypto {

// A raw credential attribute as the issuer received it.
using RawAttribute = std::variant<std::int64_t, std::string>;

// Integers below 2^252 pass through; strings map to SHA-256 truncated to
// 252 bits. Throws Error(kOutOfRange) for negative or oversized integers.
Int encode_attribute(const Int& raw);
Int encode_attribute(std::string_view raw);
Int encode_attribute(const RawAttribute& raw);

json raw_to_json(const RawAttribute& raw);
RawAttribute raw_from_json(const json& j);

}  // namespace fcguard::crypto
