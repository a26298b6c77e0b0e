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

#include "fcguard/crypto/commitment.hpp"

#include "fcguard/crypto/transcript.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {

CommitmentKey rsa_commitment_key(const ClPublicKey& pub, std::size_t slot, unsigned stat_bits) {
  enforce(slot < pub.R.size(), ErrorCode::kOutOfRange, "commitment slot outside the key");
  return CommitmentKey{pub.n, pub.R[slot], pub.S, 0,
                       static_cast<unsigned>(bit_length(pub.n)) + stat_bits};
}

CommitmentKey group_commitment_key(const GroupParams& group) {
  auto bits = static_cast<unsigned>(bit_length(group.P)) + 64;
  std::string seed = encode_int(group.P) + encode_int(group.g);
  for (std::uint32_t counter = 0;; ++counter) {
    Int x = expand_hash("fcguard/commitment-base", seed + encode_int(Int(counter)), bits) % group.P;
    Int h = x * x % group.P;
    if (h > 1) return CommitmentKey{group.P, group.g, h, group.Q, 0};
  }
}

IntegerCommitment commit(const CommitmentKey& key, const Int& m, Rng& rng) {
  Int r = key.order > 0 ? rng.below(key.order) : rng.bits(key.blinding_bits);
  return commit_with(key, m, r);
}

IntegerCommitment commit_with(const CommitmentKey& key, const Int& m, const Int& r) {
  enforce(m >= 0 && bit_length(m) <= profile(Profile::kToy).attribute_bits,
          ErrorCode::kOutOfRange, "commitment message outside the attribute range");
  Int C = powm(key.g, m, key.modulus) * powm(key.h, r, key.modulus) % key.modulus;
  return IntegerCommitment{C, m, r};
}

bool open_verify(const CommitmentKey& key, const Int& C, const Int& m, const Int& r) {
  try {
    return powm(key.g, m, key.modulus) * powm(key.h, r, key.modulus) % key.modulus == C;
  } catch (const Error&) {
    return false;
  }
}

void to_json(json& j, const CommitmentKey& k) {
  j = json{{"modulus", k.modulus}, {"g", k.g}, {"h", k.h}, {"order", k.order},
           {"blinding_bits", k.blinding_bits}};
}

void from_json(const json& j, CommitmentKey& k) {
  k.modulus = j.at("modulus").get<Int>();
  k.g = j.at("g").get<Int>();
  k.h = j.at("h").get<Int>();
  k.order = j.at("order").get<Int>();
  k.blinding_bits = j.at("blinding_bits").get<unsigned>();
}

}  // namespace fcguard::crypto
