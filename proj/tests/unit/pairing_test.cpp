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

#include "crypto/pairing.hpp"

#include <blst.h>
#include <gtest/gtest.h>

#include "common/error.hpp"

namespace jager::crypto {
namespace {

Bytes RandomBytes(Rng& rng, size_t n) {
  Bytes b(n);
  rng.Fill(b);
  return b;
}

TEST(HashToGroup, Deterministic) {
  const auto msg = AsBytes("call");
  EXPECT_EQ(G1::Hash(tags::kH1, msg), G1::Hash(tags::kH1, msg));
  EXPECT_EQ(G2::Hash(tags::kHBeta, msg), G2::Hash(tags::kHBeta, msg));
}

TEST(HashToGroup, DomainTagsSeparate) {
  auto rng = Rng::Seeded(1);
  for (int i = 0; i < 100; ++i) {
    Bytes m = RandomBytes(rng, 1 + i % 40);
    EXPECT_FALSE(G1::Hash(tags::kH1, m) == G1::Hash(tags::kH2, m));
    EXPECT_FALSE(G2::Hash(tags::kHBeta, m) == G2::Hash(tags::kHAlpha, m));
    EXPECT_NE(HashToDigest(tags::kIndex, m), HashToDigest(tags::kH2, m));
  }
}

TEST(HashToGroup, OutputsInSubgroup) {
  auto rng = Rng::Seeded(2);
  for (int i = 0; i < 100; ++i) {
    Bytes m = RandomBytes(rng, 32);
    G1 p = G1::Hash(tags::kH1, m);
    G2 q = G2::Hash(tags::kHBeta, m);
    EXPECT_TRUE(p.InSubgroup());
    EXPECT_TRUE(q.InSubgroup());
    EXPECT_FALSE(p.IsIdentity());
    EXPECT_FALSE(q.IsIdentity());
  }
}

// Expected digests come from an independent Python implementation of
// expand_message_xmd (SHA-256) over the literal tag strings.
TEST(HashToGroup, DomainTagVectors) {
  EXPECT_EQ(tags::kH1, "JAGER-H1");
  EXPECT_EQ(tags::kH2, "JAGER-H2");
  EXPECT_EQ(tags::kH3, "JAGER-H3");
  EXPECT_EQ(tags::kHAlpha, "JAGER-HA");
  EXPECT_EQ(tags::kHBeta, "JAGER-HB");
  EXPECT_EQ(tags::kIndex, "JAGER-IDX");
  const auto abc = AsBytes("abc");
  EXPECT_EQ(ToHex(HashToDigest(tags::kIndex, abc)),
            "b3189d400355ca7a2d5897e53c64dfb1e9841b008b5aa8759f00a4ca997af15d");
  EXPECT_EQ(ToHex(HashToDigest(tags::kH2, abc)),
            "5a0efff7d0ed235bab6e57836e0adec774a0e0e6276bee641d2461eda0429f4a");
  EXPECT_EQ(ToHex(HashToDigest(tags::kHAlpha, abc)),
            "e00221d7d74c8f40b770d253423dc1ab7e6d8fcac47526d2ecc87c2a5f8db894");
  EXPECT_EQ(ToHex(ExpandMessage(tags::kH3, abc, 24)),
            "3ffa9874f3a747c1b089f6d05c8408bfc7d0f950dafc1336");
}

TEST(Pairing, Bilinear) {
  const G1 g = G1::Generator();
  const G2 h = G2::Generator();
  const Scalar two = Scalar::FromU64(2);
  EXPECT_EQ(Pairing(g * two, h), Pairing(g, h * two));
  EXPECT_TRUE(Pairing(g, h).Pow(Scalar()).IsOne());
  EXPECT_FALSE(Pairing(g, h).IsOne());
}

TEST(Pairing, BilinearityProperty) {
  auto rng = Rng::Seeded(3);
  const GT base = Pairing(G1::Generator(), G2::Generator());
  for (int i = 0; i < 100; ++i) {
    const Scalar x = Scalar::Random(rng);
    const Scalar y = Scalar::Random(rng);
    EXPECT_EQ(Pairing(G1::Generator() * x, G2::Generator() * y), base.Pow(x * y)) << i;
  }
}

TEST(Pairing, ProductMatchesIndividualPairings) {
  auto rng = Rng::Seeded(4);
  const G1 a = G1::Generator() * Scalar::Random(rng);
  const G1 b = G1::Generator() * Scalar::Random(rng);
  const G2 c = G2::Generator() * Scalar::Random(rng);
  const G2 d = G2::Generator() * Scalar::Random(rng);
  const std::pair<G1, G2> terms[] = {{a, c}, {b, d}};
  EXPECT_EQ(PairingProduct(terms), Pairing(a, c) * Pairing(b, d));
  EXPECT_TRUE((Pairing(a, c) * Pairing(a, c).Inverse()).IsOne());
  EXPECT_TRUE(Pairing(G1(), c).IsOne());
}

TEST(Scalar, ArithmeticAndEncoding) {
  auto rng = Rng::Seeded(5);
  for (int i = 0; i < 50; ++i) {
    const Scalar a = Scalar::RandomNonZero(rng);
    const Scalar b = Scalar::Random(rng);
    EXPECT_EQ(a * a.Inverse(), Scalar::FromU64(1));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_TRUE((a + -a).IsZero());
    EXPECT_EQ(Scalar::FromBytes(a.ToBytes()), a);
  }
  EXPECT_THROW(Scalar().Inverse(), Error);
  std::array<uint8_t, 32> too_big;
  too_big.fill(0xff);
  EXPECT_THROW(Scalar::FromBytes(too_big), Error);
  EXPECT_TRUE(Scalar::FromBytes(std::array<uint8_t, 32>{}).IsZero());
}

TEST(Serialization, RoundTripsAllElementKinds) {
  auto rng = Rng::Seeded(6);
  for (int i = 0; i < 20; ++i) {
    const Scalar s = Scalar::Random(rng);
    const G1 p = G1::Generator() * s;
    const G2 q = G2::Generator() * s;
    const GT t = GT::Generator().Pow(s);
    EXPECT_EQ(G1::FromBytes(p.ToBytes()), p);
    EXPECT_EQ(G2::FromBytes(q.ToBytes()), q);
    EXPECT_EQ(GT::FromBytes(t.ToBytes()), t);
    EXPECT_EQ(Scalar::FromBytes(s.ToBytes()), s);
  }
  EXPECT_TRUE(G1::FromBytes(G1().ToBytes()).IsIdentity());
}

TEST(Serialization, RejectsGarbage) {
  auto rng = Rng::Seeded(7);
  Bytes junk = RandomBytes(rng, GT::kBytes);
  junk[0] &= 0x0f;
  EXPECT_THROW(GT::FromBytes(junk), Error);
  EXPECT_THROW(G1::FromBytes(Bytes(47, 0)), Error);
  Bytes bad_g2(G2::kBytes, 0xff);
  EXPECT_THROW(G2::FromBytes(bad_g2), Error);
}

TEST(Bls, KeygenWithUnitSecret) {
  const auto kp = BlsKeyPair::FromSecret(Scalar::FromU64(1));
  EXPECT_EQ(kp.vk, G1::Generator());
}

TEST(Bls, DistinctSeedsGiveDistinctKeys) {
  auto r1 = Rng::Seeded(10);
  auto r2 = Rng::Seeded(11);
  EXPECT_FALSE(BlsKeyPair::Generate(r1).sk == BlsKeyPair::Generate(r2).sk);
}

TEST(Bls, KeyPairSerializationRoundTrip) {
  auto rng = Rng::Seeded(12);
  const auto kp = BlsKeyPair::Generate(rng);
  const auto back = BlsKeyPair::FromSecret(Scalar::FromBytes(kp.sk.ToBytes()));
  EXPECT_EQ(back.vk, G1::FromBytes(kp.vk.ToBytes()));
}

TEST(Bls, SignVerifyRandomMessages) {
  auto rng = Rng::Seeded(13);
  const auto kp = BlsKeyPair::Generate(rng);
  for (int i = 0; i < 100; ++i) {
    Bytes m = RandomBytes(rng, 32);
    auto sig = BlsSign(kp.sk, m);
    EXPECT_TRUE(BlsVerify(kp.vk, m, sig));
    m[i % 32] ^= static_cast<uint8_t>(1u << (i % 8));
    EXPECT_FALSE(BlsVerify(kp.vk, m, sig));
  }
}

// Independent route: blst's own min-pk signing with the same DST.
TEST(Bls, SignatureMatchesBlstReference) {
  auto rng = Rng::Seeded(14);
  for (int i = 0; i < 10; ++i) {
    const auto kp = BlsKeyPair::Generate(rng);
    Bytes m = RandomBytes(rng, 20);
    blst_p2 hash;
    blst_hash_to_g2(&hash, m.data(), m.size(),
                    reinterpret_cast<const uint8_t*>(tags::kHBeta.data()), tags::kHBeta.size(),
                    nullptr, 0);
    blst_scalar sk = kp.sk.ToBlst();
    blst_p2 expected;
    blst_sign_pk_in_g1(&expected, &hash, &sk);
    EXPECT_EQ(BlsSign(kp.sk, m).point, G2(expected));
  }
}

TEST(Bls, VerifyRejections) {
  auto rng = Rng::Seeded(15);
  const auto kp = BlsKeyPair::Generate(rng);
  const auto other = BlsKeyPair::Generate(rng);
  const auto msg = AsBytes("idx");
  const auto sig = BlsSign(kp.sk, msg);
  EXPECT_TRUE(BlsVerify(kp.vk, msg, sig));
  EXPECT_FALSE(BlsVerify(other.vk, msg, sig));
  EXPECT_FALSE(BlsVerify(kp.vk, msg, BlsSignature{G2()}));
  EXPECT_FALSE(BlsVerify(G1(), msg, sig));
}

TEST(Bls, SingleBitTamperOfEncodedInputs) {
  auto rng = Rng::Seeded(16);
  const auto kp = BlsKeyPair::Generate(rng);
  const Bytes msg = RandomBytes(rng, 32);
  const auto vk = kp.vk.ToBytes();
  const auto sig = BlsSign(kp.sk, msg).ToBytes();
  ASSERT_TRUE(BlsVerifyBytes(vk, msg, sig));
  for (size_t bit = 0; bit < sig.size() * 8; bit += 7) {
    auto s = sig;
    s[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(BlsVerifyBytes(vk, msg, s)) << bit;
  }
  for (size_t bit = 0; bit < vk.size() * 8; bit += 5) {
    auto v = vk;
    v[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(BlsVerifyBytes(v, msg, sig)) << bit;
  }
}

}  // namespace
}  // namespace jager::crypto
