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

#include "fcguard/crypto/params.hpp"

#include <string>

#include "fcguard/error.hpp"

namespace fcguard::crypto {

namespace {

constexpr ParameterProfile kToy{
    .id = Profile::kToy,
    .cl_prime_bits = 64,
    .challenge_bits = 80,
    .stat_bits = 80,
    .attribute_bits = 256,
    .e_bits = 256 + 80 + 80 + 5,
    .e_range_bits = 120,
    .group_bits = 512,
};

constexpr ParameterProfile kPaper{
    .id = Profile::kPaper,
    .cl_prime_bits = 1536,
    .challenge_bits = 256,
    .stat_bits = 80,
    .attribute_bits = 256,
    .e_bits = 256 + 256 + 80 + 5,
    .e_range_bits = 120,
    .group_bits = 2048,
};

}  // namespace

const ParameterProfile& profile(Profile id) { return id == Profile::kToy ? kToy : kPaper; }

Profile parse_profile(std::string_view name) {
  if (name == "toy") return Profile::kToy;
  if (name == "paper") return Profile::kPaper;
  fail(ErrorCode::kInvalidArgument, "unknown parameter profile: " + std::string(name));
}

}  // namespace fcguard::crypto
