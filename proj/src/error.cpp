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

#include "fcguard/error.hpp"

namespace fcguard {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kPrimeGenerationTimeout: return "prime-generation-timeout";
    case ErrorCode::kDecryptionFailure: return "decryption-failure";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kUnknownId: return "unknown-id";
    case ErrorCode::kVerificationFailed: return "verification-failed";
    case ErrorCode::kSchemaMismatch: return "schema-mismatch";
    case ErrorCode::kProofRefused: return "proof-refused";
    case ErrorCode::kInsufficientFunds: return "insufficient-funds";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kStateViolation: return "state-violation";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kBackend: return "backend";
  }
  return "unknown";
}

}  // namespace fcguard
