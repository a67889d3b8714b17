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

// Witness encryption keyed by a BLS verification key and a label: any valid
// BLS signature on the label under that key decrypts.
//
//   enc:  c1 = g^r1,  c2 = e(vk, H_beta(label))^r1 * r2,  c3 = H_alpha(r2) ^ m
//   dec:  r2 = c2 * e(c1, sig)^-1,  m = c3 ^ H_alpha(r2)

#ifndef JAGER_CRYPTO_WES_HPP_
#define JAGER_CRYPTO_WES_HPP_

#include <array>

#include "crypto/pairing.hpp"

namespace jager::crypto {

inline constexpr size_t kWesMessageBytes = 32;
using WesMessage = std::array<uint8_t, kWesMessageBytes>;

struct WesCiphertext {
  G1 c1;
  GT c2;
  WesMessage c3{};

  // Wire layout: c1 (48, compressed G1) || c2 (576, GT) || c3 (32).
  static constexpr size_t kBytes = G1::kBytes + GT::kBytes + kWesMessageBytes;

  Bytes ToBytes() const;
  static WesCiphertext FromBytes(ByteView in);
};

WesCiphertext WesEncrypt(const G1& vk, ByteView label, ByteView message, Rng& rng);

// A wrong witness is not detected: the result is simply unrelated to the
// encrypted message.
WesMessage WesDecrypt(const BlsSignature& sig, const WesCiphertext& ct);

// H_alpha over the canonical GT encoding.
WesMessage WesMask(const GT& r);

}  // namespace jager::crypto

#endif  // JAGER_CRYPTO_WES_HPP_
