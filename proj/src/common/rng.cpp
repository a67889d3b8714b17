/*
 * Copyright 2026 The Jager Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "common/rng.hpp"

#include <sodium.h>

#include <cstring>

#include "common/error.hpp"

namespace jager {

void InitCrypto() {
  if (sodium_init() < 0) Fail(ErrorCode::kInternal, "libsodium init failed");
}

Rng Rng::System() {
  InitCrypto();
  return Rng();
}

Rng Rng::Seeded(uint64_t seed) {
  InitCrypto();
  Rng rng;
  rng.seeded_ = true;
  uint8_t seed_bytes[8];
  for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<uint8_t>(seed >> (8 * i));
  crypto_generichash(rng.key_.data(), rng.key_.size(), seed_bytes, sizeof(seed_bytes),
                     nullptr, 0);
  return rng;
}

void Rng::Fill(std::span<uint8_t> out) {
  if (!seeded_) {
    randombytes_buf(out.data(), out.size());
    return;
  }
  uint8_t nonce[crypto_stream_chacha20_NONCEBYTES];
  for (size_t i = 0; i < sizeof(nonce); ++i) nonce[i] = static_cast<uint8_t>(counter_ >> (8 * i));
  ++counter_;
  crypto_stream_chacha20(out.data(), out.size(), nonce, key_.data());
}

uint64_t Rng::NextU64() {
  uint8_t buf[8];
  Fill(buf);
  uint64_t v;
  std::memcpy(&v, buf, sizeof(v));
  return v;
}

}  // namespace jager
