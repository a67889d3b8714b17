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

#include <gtest/gtest.h>

#include "common/error.hpp"

namespace jager::crypto {
namespace {

WesMessage RandomMessage(Rng& rng) {
  WesMessage m;
  rng.Fill(m);
  return m;
}

TEST(Wes, RoundTripWithValidSignature) {
  auto rng = Rng::Seeded(20);
  const auto kp = BlsKeyPair::Generate(rng);
  for (int i = 0; i < 25; ++i) {
    Bytes label(32);
    rng.Fill(label);
    const auto m = RandomMessage(rng);
    const auto ct = WesEncrypt(kp.vk, label, m, rng);
    EXPECT_EQ(WesDecrypt(BlsSign(kp.sk, label), ct), m);
  }
}

TEST(Wes, WrongWitnessYieldsUnrelatedMessage) {
  auto rng = Rng::Seeded(21);
  const auto kp = BlsKeyPair::Generate(rng);
  const auto other = BlsKeyPair::Generate(rng);
  const auto label = AsBytes("label-a");
  const auto m = RandomMessage(rng);
  const auto ct = WesEncrypt(kp.vk, label, m, rng);
  EXPECT_NE(WesDecrypt(BlsSign(kp.sk, AsBytes("label-b")), ct), m);
  EXPECT_NE(WesDecrypt(BlsSign(other.sk, label), ct), m);
  EXPECT_NE(WesDecrypt(BlsSignature{G2()}, ct), m);
}

TEST(Wes, EncryptionIsRandomized) {
  auto rng = Rng::Seeded(22);
  const auto kp = BlsKeyPair::Generate(rng);
  const auto m = RandomMessage(rng);
  const auto a = WesEncrypt(kp.vk, AsBytes("x"), m, rng);
  const auto b = WesEncrypt(kp.vk, AsBytes("x"), m, rng);
  EXPECT_NE(a.ToBytes(), b.ToBytes());
}

// Recomputes c1 and c2 from the seeded randomness using e(g1, H^(sk*r1)),
// a different bilinear route from the encryptor's e(vk^r1, H).
TEST(Wes, CiphertextMatchesFormula) {
  auto key_rng = Rng::Seeded(23);
  const auto kp = BlsKeyPair::Generate(key_rng);
  const auto label = AsBytes("formula");
  WesMessage m{};
  m[0] = 0x42;

  auto enc_rng = Rng::Seeded(99);
  const auto ct = WesEncrypt(kp.vk, label, m, enc_rng);

  auto replay = Rng::Seeded(99);
  const Scalar r1 = Scalar::RandomNonZero(replay);
  const GT r2 = GT::Generator().Pow(Scalar::Random(replay));
  const G2 h = G2::Hash(tags::kHBeta, label);

  EXPECT_EQ(ct.c1, G1::Generator() * r1);
  EXPECT_EQ(ct.c2, Pairing(G1::Generator(), h * (kp.sk * r1)) * r2);
  const Digest mask = HashToDigest("JAGER-HA", r2.ToBytes());
  for (size_t i = 0; i < kWesMessageBytes; ++i) EXPECT_EQ(ct.c3[i], mask[i] ^ m[i]);
}

TEST(Wes, WireLayout) {
  auto rng = Rng::Seeded(24);
  const auto kp = BlsKeyPair::Generate(rng);
  const auto ct = WesEncrypt(kp.vk, AsBytes("l"), RandomMessage(rng), rng);
  const Bytes wire = ct.ToBytes();
  ASSERT_EQ(wire.size(), 656u);
  const auto c1 = ct.c1.ToBytes();
  const auto c2 = ct.c2.ToBytes();
  EXPECT_EQ(Bytes(wire.begin(), wire.begin() + 48), Bytes(c1.begin(), c1.end()));
  EXPECT_EQ(Bytes(wire.begin() + 48, wire.begin() + 624), Bytes(c2.begin(), c2.end()));
  EXPECT_EQ(Bytes(wire.begin() + 624, wire.end()), Bytes(ct.c3.begin(), ct.c3.end()));
  const auto back = WesCiphertext::FromBytes(wire);
  EXPECT_EQ(back.ToBytes(), wire);
}

TEST(Wes, RejectsMalformedInput) {
  auto rng = Rng::Seeded(25);
  const auto kp = BlsKeyPair::Generate(rng);
  EXPECT_THROW(WesEncrypt(kp.vk, AsBytes("l"), Bytes(31), rng), Error);
  EXPECT_THROW(WesCiphertext::FromBytes(Bytes(655)), Error);
  Bytes wire = WesEncrypt(kp.vk, AsBytes("l"), Bytes(32), rng).ToBytes();
  wire[100] ^= 1;
  EXPECT_THROW(WesCiphertext::FromBytes(wire), Error);
}

}  // namespace
}  // namespace jager::crypto
