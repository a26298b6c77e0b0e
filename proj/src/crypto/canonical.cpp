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

#include "fcguard/crypto/canonical.hpp"

#include "fcguard/error.hpp"

namespace fcguard::crypto {

std::vector<std::uint8_t> int_field_bytes(const Int& x) {
  Int magnitude = abs(x);
  auto mag = magnitude_bytes(magnitude);
  std::vector<std::uint8_t> out;
  out.reserve(mag.size() + 4);
  auto len = static_cast<std::uint32_t>(mag.size());
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  out.insert(out.end(), mag.begin(), mag.end());
  return out;
}

std::string encode_int(const Int& x) {
  std::string hex = to_hex(int_field_bytes(x));
  return x < 0 ? "-" + hex : hex;
}

Int decode_int(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto bytes = from_hex(text);
  enforce(bytes.size() >= 4, ErrorCode::kParseError, "integer field: missing length prefix");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = len << 8 | bytes[static_cast<std::size_t>(i)];
  enforce(bytes.size() == 4 + static_cast<std::size_t>(len), ErrorCode::kParseError,
          "integer field: length prefix mismatch");
  enforce(len == 0 || bytes[4] != 0, ErrorCode::kParseError,
          "integer field: non-canonical leading zero");
  enforce(!(negative && len == 0), ErrorCode::kParseError, "integer field: negative zero");
  Int value = from_magnitude_bytes(std::span(bytes).subspan(4));
  return negative ? Int(-value) : value;
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::vector<std::string> taint_patterns(const Int& value) {
  auto field = int_field_bytes(value);
  return {
      std::string(field.begin(), field.end()),
      to_hex(field),
      value.get_str(10),
  };
}

bool contains_taint(std::string_view haystack, const Int& value) {
  for (const auto& pattern : taint_patterns(value)) {
    if (haystack.find(pattern) != std::string_view::npos) return true;
  }
  return false;
}

}  // namespace fcguard::crypto
