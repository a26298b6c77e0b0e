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

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/crypto/canonical.hpp"
#include "fcguard/crypto/cl.hpp"
#include "fcguard/crypto/elgamal.hpp"
#include "fcguard/crypto/rng.hpp"

namespace fcguard::crypto {

// C = g^m h^r mod modulus. `order` is the group order for prime-order keys
// and 0 for RSA-group keys, whose blinding is drawn from 2^blinding_bits.
struct CommitmentKey {
  Int modulus;
  Int g;
  Int h;
  Int order;
  unsigned blinding_bits = 0;
  bool operator==(const CommitmentKey&) const = default;
};

// Bases (R_slot, S) of a CL key over n.
CommitmentKey rsa_commitment_key(const ClPublicKey& pub, std::size_t slot, unsigned stat_bits);
// Generator g and a hash-derived h nobody knows the logarithm of.
CommitmentKey group_commitment_key(const GroupParams& group);

struct IntegerCommitment {
  Int value;
  Int message;
  Int blinding;
};

IntegerCommitment commit(const CommitmentKey& key, const Int& m, Rng& rng);
IntegerCommitment commit_with(const CommitmentKey& key, const Int& m, const Int& r);
bool open_verify(const CommitmentKey& key, const Int& C, const Int& m, const Int& r);

void to_json(json& j, const CommitmentKey& k);
void from_json(const json& j, CommitmentKey& k);

}  // namespace fcguard::crypto
