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

#include "fcguard/crypto/encoding.hpp"

#include "fcguard/crypto/hash.hpp"
#include "fcguard/crypto/params.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {

Int encode_attribute(const Int& raw) {
  enforce(raw >= 0 && raw < pow2(kAttributeEncodingBits), ErrorCode::kOutOfRange,
          "attribute integer outside [0, 2^252)");
  return raw;
}

Int encode_attribute(std::string_view raw) {
  Digest d = sha256(raw);
  return from_magnitude_bytes(d) >> (256 - kAttributeEncodingBits);
}

Int encode_attribute(const RawAttribute& raw) {
  if (const auto* i = std::get_if<std::int64_t>(&raw)) {
    return encode_attribute(Int(static_cast<long>(*i)));
  }
  return encode_attribute(std::string_view(std::get<std::string>(raw)));
}

json raw_to_json(const RawAttribute& raw) {
  if (const auto* i = std::get_if<std::int64_t>(&raw)) return *i;
  return std::get<std::string>(raw);
}

RawAttribute raw_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  fail(ErrorCode::kParseError, "raw attribute must be an integer or a string");
}

}  // namespace fcguard::crypto
