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

#include "crypto/groupsig.hpp"

#include <gtest/gtest.h>

#include "common/error.hpp"

namespace jager::crypto {
namespace {

class GroupSigTest : public ::testing::Test {
 protected:
  GroupSigTest() : rng_(Rng::Seeded(40)), gm_(GroupManager::Generate(rng_)) {}
  Rng rng_;
  GroupManager gm_;
};

TEST_F(GroupSigTest, MemberCredentialSatisfiesIssuingEquation) {
  const auto key = gm_.Join(7);
  const auto& gpk = gm_.public_key();
  // e(A, w * g2^x) == e(g1, g2)
  EXPECT_EQ(Pairing(key.a, gpk.w + gpk.g2 * key.x), Pairing(gpk.g1, gpk.g2));
}

TEST_F(GroupSigTest, SignVerifyOpen) {
  const auto key = gm_.Join(1);
  const auto sig = GroupSign(gm_.public_key(), key, AsBytes("msg"), rng_);
  EXPECT_TRUE(GroupVerify(gm_.public_key(), AsBytes("msg"), sig));
  EXPECT_FALSE(GroupVerify(gm_.public_key(), AsBytes("msh"), sig));
  EXPECT_EQ(gm_.Open(sig), 1u);
}

TEST_F(GroupSigTest, OpenIdentifiesEachOfManySigners) {
  std::vector<MemberKey> keys;
  for (MemberId id = 100; id < 200; ++id) keys.push_back(gm_.Join(id));
  for (const auto& key : keys) {
    Bytes msg(16);
    rng_.Fill(msg);
    const auto sig = GroupSign(gm_.public_key(), key, msg, rng_);
    ASSERT_TRUE(GroupVerify(gm_.public_key(), msg, sig));
    EXPECT_EQ(gm_.Open(sig), key.id);
  }
}

TEST_F(GroupSigTest, SignaturesAreUnlinkableBytes) {
  const auto key = gm_.Join(3);
  const auto a = GroupSign(gm_.public_key(), key, AsBytes("m"), rng_).ToBytes();
  const auto b = GroupSign(gm_.public_key(), key, AsBytes("m"), rng_).ToBytes();
  EXPECT_NE(a, b);
  EXPECT_EQ(a.size(), GroupSignature::kBytes);
  EXPECT_EQ(b.size(), GroupSignature::kBytes);
}

TEST_F(GroupSigTest, DuplicateJoinRejected) {
  gm_.Join(5);
  try {
    gm_.Join(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAlreadyExists);
  }
}

TEST_F(GroupSigTest, TamperedSignatureFailsVerification) {
  const auto key = gm_.Join(9);
  const auto msg = AsBytes("record");
  const Bytes wire = GroupSign(gm_.public_key(), key, msg, rng_).ToBytes();
  ASSERT_TRUE(GroupVerifyBytes(gm_.public_key(), msg, wire));
  for (size_t bit = 0; bit < wire.size() * 8; bit += 37) {
    Bytes t = wire;
    t[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(GroupVerifyBytes(gm_.public_key(), msg, t)) << bit;
  }
  EXPECT_FALSE(GroupVerifyBytes(gm_.public_key(), msg, Bytes(wire.begin(), wire.end() - 1)));
}

TEST_F(GroupSigTest, ForeignCredentialRejected) {
  auto other_rng = Rng::Seeded(41);
  auto other = GroupManager::Generate(other_rng);
  const auto outsider = other.Join(1);
  const auto sig = GroupSign(other.public_key(), outsider, AsBytes("m"), rng_);
  EXPECT_FALSE(GroupVerify(gm_.public_key(), AsBytes("m"), sig));
  // Forged credential against the right public key.
  MemberKey fake{2, gm_.public_key().epoch, G1::Generator() * Scalar::FromU64(5), Scalar::FromU64(6)};
  EXPECT_FALSE(GroupVerify(gm_.public_key(), AsBytes("m"), GroupSign(gm_.public_key(), fake, AsBytes("m"), rng_)));
  EXPECT_THROW(gm_.Open(sig), Error);
}

TEST_F(GroupSigTest, RevokedMemberCannotSign) {
  const auto alice = gm_.Join(1);
  gm_.Join(2);
  const auto old_sig = GroupSign(gm_.public_key(), alice, AsBytes("m"), rng_);
  gm_.Revoke(1);
  EXPECT_TRUE(gm_.IsRevoked(1));
  EXPECT_FALSE(gm_.IsMember(1));
  EXPECT_EQ(gm_.size(), 1u);
  const auto& gpk = gm_.public_key();
  EXPECT_EQ(gpk.epoch, 1u);
  EXPECT_FALSE(GroupVerify(gpk, AsBytes("m"), GroupSign(gpk, alice, AsBytes("m"), rng_)));
  MemberKey stale = alice;
  stale.epoch = gpk.epoch;
  EXPECT_FALSE(GroupVerify(gpk, AsBytes("m"), GroupSign(gpk, stale, AsBytes("m"), rng_)));
  EXPECT_THROW(gm_.IssuedKey(1), Error);

  const auto bob = gm_.IssuedKey(2);
  EXPECT_EQ(bob.epoch, 1u);
  const auto sig = GroupSign(gpk, bob, AsBytes("m"), rng_);
  EXPECT_TRUE(GroupVerify(gpk, AsBytes("m"), sig));
  EXPECT_EQ(gm_.Open(sig), 2u);
  // Signatures made before the revocation can still be attributed.
  EXPECT_EQ(gm_.Open(old_sig), 1u);
  EXPECT_FALSE(GroupVerify(gpk, AsBytes("m"), old_sig));
  EXPECT_TRUE(gm_.VerifyAnyEpoch(AsBytes("m"), old_sig));
  EXPECT_FALSE(gm_.VerifyAnyEpoch(AsBytes("n"), old_sig));
}

TEST_F(GroupSigTest, EncodingsRoundTrip) {
  const auto key = gm_.Join(11);
  const auto& gpk = gm_.public_key();
  EXPECT_EQ(gpk.ToBytes().size(), 388u);
  EXPECT_EQ(GroupPublicKey::FromBytes(gpk.ToBytes()).ToBytes(), gpk.ToBytes());
  EXPECT_EQ(key.ToBytes().size(), 92u);
  EXPECT_EQ(MemberKey::FromBytes(key.ToBytes()).ToBytes(), key.ToBytes());
  const auto sig = GroupSign(gpk, key, AsBytes("m"), rng_);
  EXPECT_EQ(sig.ToBytes().size(), 336u);
  EXPECT_EQ(GroupSignature::FromBytes(sig.ToBytes()).ToBytes(), sig.ToBytes());

  gm_.Join(12);
  gm_.Revoke(12);
  const auto restored = GroupManager::FromBytes(gm_.ToBytes());
  EXPECT_EQ(restored.public_key().ToBytes(), gm_.public_key().ToBytes());
  EXPECT_EQ(restored.Open(sig), 11u);
  EXPECT_TRUE(restored.IsRevoked(12));
  EXPECT_EQ(restored.Members(), gm_.Members());
}

}  // namespace
}  // namespace jager::crypto
