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
#include <vector>

#include <json.hpp>

#include "fcguard/crypto/bigint.hpp"

namespace fcguard::crypto {

using json = nlohmann::json;

// Integer field wire form: 4-byte big-endian length, then the big-endian
// magnitude. Inside JSON it travels as lowercase hex of those bytes, with a
// leading '-' for negatives. This is also what transcripts absorb, so the
// layout must not change.
std::vector<std::uint8_t> int_field_bytes(const Int& x);
std::string encode_int(const Int& x);
// Strict: rejects bad hex, length mismatch, leading zero bytes and "-0".
Int decode_int(std::string_view text);

// Objects are emitted with keys in lexicographic order and no whitespace.
std::string canonical_dump(const json& j);

// Byte patterns that betray `value` inside serialized traffic: the wire
// bytes, their hex text, and the decimal rendering.
std::vector<std::string> taint_patterns(const Int& value);
bool contains_taint(std::string_view haystack, const Int& value);

}  // namespace fcguard::crypto

namespace nlohmann {
template <>
struct adl_serializer<mpz_class> {
  static void to_json(json& j, const mpz_class& x) { j = fcguard::crypto::encode_int(x); }
  static void from_json(const json& j, mpz_class& x) {
    x = fcguard::crypto::decode_int(j.get_ref<const std::string&>());
  }
};
}  // namespace nlohmann
