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

#include "fcguard/crypto/rng.hpp"

#include <algorithm>
#include <random>

#include "fcguard/error.hpp"

namespace fcguard::crypto {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::vector<std::uint8_t> material{'s', 'e', 'e', 'd'};
  put_u64(material, seed);
  key_ = sha256(material);
}

Rng::Rng(std::span<const std::uint8_t> seed_material) { key_ = sha256(seed_material); }

Rng Rng::from_entropy() {
  std::random_device device;
  std::vector<std::uint8_t> material(32);
  for (auto& b : material) b = static_cast<std::uint8_t>(device());
  return Rng(material);
}

Rng Rng::fork(std::string_view label) {
  std::vector<std::uint8_t> material{'f', 'o', 'r', 'k'};
  material.insert(material.end(), key_.begin(), key_.end());
  put_u64(material, forks_++);
  material.insert(material.end(), label.begin(), label.end());
  return Rng(material);
}

void Rng::refill() {
  std::vector<std::uint8_t> input(key_.begin(), key_.end());
  put_u64(input, counter_++);
  block_ = sha256(input);
  used_ = 0;
}

Rng::result_type Rng::operator()() {
  std::uint8_t buf[8];
  fill(buf);
  result_type v = 0;
  for (auto b : buf) v = v << 8 | b;
  return v;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t take = std::min(block_.size() - used_, out.size() - pos);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), take, out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += take;
    pos += take;
  }
}

Int Rng::bits(unsigned n) {
  if (n == 0) return 0;
  std::vector<std::uint8_t> buf((n + 7) / 8);
  fill(buf);
  unsigned excess = static_cast<unsigned>(buf.size() * 8 - n);
  buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
  return from_magnitude_bytes(buf);
}

Int Rng::below(const Int& bound) {
  enforce(bound > 0, ErrorCode::kInvalidArgument, "Rng::below: bound must be positive");
  auto n = static_cast<unsigned>(bit_length(bound));
  for (;;) {
    Int candidate = bits(n);
    if (candidate < bound) return candidate;
  }
}

Int Rng::between(const Int& lo, const Int& hi) {
  enforce(lo <= hi, ErrorCode::kInvalidArgument, "Rng::between: empty range");
  return lo + below(hi - lo + 1);
}

Int Rng::unit_mod(const Int& n) {
  enforce(n > 1, ErrorCode::kInvalidArgument, "Rng::unit_mod: modulus must exceed 1");
  for (;;) {
    Int candidate = below(n);
    if (candidate != 0 && coprime(candidate, n)) return candidate;
  }
}

std::uint64_t Rng::below_u64(std::uint64_t bound) {
  enforce(bound > 0, ErrorCode::kInvalidArgument, "Rng::below_u64: bound must be positive");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(*this);
}

}  // namespace fcguard::crypto
