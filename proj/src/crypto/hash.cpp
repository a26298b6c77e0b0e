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

#include "fcguard/crypto/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "fcguard/crypto/bigint.hpp"
#include "fcguard/error.hpp"

namespace fcguard::crypto {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kBackend, "EVP_Digest failed");
  }
  return out;
}

Digest sha256(std::string_view data) { return sha256(as_bytes(data)); }

std::string sha256_hex(std::string_view data) { return to_hex(sha256(data)); }

namespace {

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

std::vector<std::uint8_t> derive_key(std::string_view passphrase,
                                     std::span<const std::uint8_t> salt, unsigned iterations) {
  std::vector<std::uint8_t> key(32);
  if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()), salt.data(),
                        static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(key.size()), key.data()) != 1) {
    fail(ErrorCode::kBackend, "PBKDF2 failed");
  }
  return key;
}

}  // namespace

SealedBox seal(std::string_view passphrase, std::span<const std::uint8_t> plaintext,
               std::span<const std::uint8_t> salt, std::span<const std::uint8_t> iv,
               unsigned iterations) {
  enforce(iv.size() == 12, ErrorCode::kInvalidArgument, "seal: GCM IV must be 12 bytes");
  auto key = derive_key(passphrase, salt, iterations);
  CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  SealedBox box;
  box.salt.assign(salt.begin(), salt.end());
  box.iv.assign(iv.begin(), iv.end());
  box.iterations = iterations;
  box.ciphertext.resize(plaintext.size());
  box.tag.resize(16);
  int len = 0;
  int total = 0;
  bool ok = ctx && EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                                      iv.data()) == 1;
  ok = ok && EVP_EncryptUpdate(ctx.get(), box.ciphertext.data(), &len, plaintext.data(),
                               static_cast<int>(plaintext.size())) == 1;
  total = len;
  ok = ok && EVP_EncryptFinal_ex(ctx.get(), box.ciphertext.data() + total, &len) == 1;
  ok = ok && EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, box.tag.data()) == 1;
  if (!ok) fail(ErrorCode::kBackend, "AES-GCM encryption failed");
  return box;
}

std::vector<std::uint8_t> open(std::string_view passphrase, const SealedBox& box) {
  enforce(box.iv.size() == 12 && box.tag.size() == 16, ErrorCode::kDecryptionFailure,
          "open: malformed sealed box");
  auto key = derive_key(passphrase, box.salt, box.iterations);
  CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  std::vector<std::uint8_t> plain(box.ciphertext.size());
  int len = 0;
  bool ok = ctx && EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                                      box.iv.data()) == 1;
  ok = ok && EVP_DecryptUpdate(ctx.get(), plain.data(), &len, box.ciphertext.data(),
                               static_cast<int>(box.ciphertext.size())) == 1;
  std::vector<std::uint8_t> tag = box.tag;
  ok = ok && EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data()) == 1;
  ok = ok && EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &len) == 1;
  if (!ok) fail(ErrorCode::kDecryptionFailure, "open: authentication failed");
  return plain;
}

}  // namespace fcguard::crypto
