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

#include "crypto/wes.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace jager::crypto {

Bytes WesCiphertext::ToBytes() const {
  Bytes out;
  out.reserve(kBytes);
  Append(out, c1.ToBytes());
  Append(out, c2.ToBytes());
  Append(out, c3);
  return out;
}

WesCiphertext WesCiphertext::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "WES ciphertext has wrong length");
  WesCiphertext ct;
  ct.c1 = G1::FromBytes(in.subspan(0, G1::kBytes));
  ct.c2 = GT::FromBytes(in.subspan(G1::kBytes, GT::kBytes));
  auto tail = in.subspan(G1::kBytes + GT::kBytes);
  std::copy(tail.begin(), tail.end(), ct.c3.begin());
  return ct;
}

WesMessage WesMask(const GT& r) { return HashToDigest(tags::kHAlpha, r.ToBytes()); }

WesCiphertext WesEncrypt(const G1& vk, ByteView label, ByteView message, Rng& rng) {
  if (message.size() != kWesMessageBytes) {
    Fail(ErrorCode::kInvalidArgument, "WES message must be 32 bytes");
  }
  const Scalar r1 = Scalar::RandomNonZero(rng);
  // r2 is uniform in GT: the fixed generator raised to a uniform exponent.
  const GT r2 = GT::Generator().Pow(Scalar::Random(rng));
  const G2 h = G2::Hash(tags::kHBeta, label);

  WesCiphertext ct;
  ct.c1 = G1::Generator() * r1;
  ct.c2 = Pairing(vk * r1, h) * r2;
  const WesMessage mask = WesMask(r2);
  for (size_t i = 0; i < kWesMessageBytes; ++i) ct.c3[i] = mask[i] ^ message[i];
  return ct;
}

WesMessage WesDecrypt(const BlsSignature& sig, const WesCiphertext& ct) {
  const GT r2 = ct.c2 * Pairing(-ct.c1, sig.point);
  const WesMessage mask = WesMask(r2);
  WesMessage m;
  for (size_t i = 0; i < kWesMessageBytes; ++i) m[i] = ct.c3[i] ^ mask[i];
  return m;
}

}  // namespace jager::crypto
