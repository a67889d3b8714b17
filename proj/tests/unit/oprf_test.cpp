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

#include "crypto/oprf.hpp"

#include <gtest/gtest.h>

#include "common/error.hpp"

namespace jager::crypto {
namespace {

TEST(Oprf, UnitBlindingMatchesDirectEvaluation) {
  auto rng = Rng::Seeded(30);
  const auto key = OprfServerKey::Generate(rng);
  const auto input = AsBytes("2025550100|2025550199|1700000000");
  const auto req = BlindWith(input, Scalar::FromU64(1));
  EXPECT_EQ(req.blinded, G1::Hash(tags::kH1, input));
  const G1 eval = Evaluate(key, req.blinded);
  EXPECT_EQ(eval, G1::Hash(tags::kH1, input) * key.k);
  EXPECT_EQ(Finalize(key.pk, req.state, eval), DirectPrf(key, input));
}

TEST(Oprf, UnitKey) {
  const auto key = OprfServerKey::FromSecret(Scalar::FromU64(1));
  EXPECT_EQ(key.pk, G2::Generator());
  const auto input = AsBytes("x");
  const G1 h = G1::Hash(tags::kH1, input);
  EXPECT_EQ(DirectPrf(key, input), LabelFromOutput(key.pk, input, h));
}

// The blinded protocol and the unblinded oracle H_2(pk, x, H_1(x)^k) agree,
// with the oracle's hash input assembled here independently.
TEST(Oprf, BlindedEqualsOracle) {
  auto rng = Rng::Seeded(31);
  const auto key = OprfServerKey::Generate(rng);
  for (int i = 0; i < 20; ++i) {
    Bytes input(28);
    rng.Fill(input);
    const auto req = Blind(input, rng);
    const CallLabel label = Finalize(key.pk, req.state, Evaluate(key, req.blinded));

    Bytes h2_in;
    Append(h2_in, key.pk.ToBytes());
    AppendU64(h2_in, input.size());
    Append(h2_in, input);
    Append(h2_in, (G1::Hash("JAGER-H1", input) * key.k).ToBytes());
    EXPECT_EQ(label, HashToDigest("JAGER-H2", h2_in));
  }
}

TEST(Oprf, DeterministicAcrossBlindings) {
  auto rng = Rng::Seeded(32);
  const auto key = OprfServerKey::Generate(rng);
  const auto input = AsBytes("same call");
  const auto a = Blind(input, rng);
  const auto b = Blind(input, rng);
  EXPECT_FALSE(a.blinded == b.blinded);
  EXPECT_EQ(Finalize(key.pk, a.state, Evaluate(key, a.blinded)),
            Finalize(key.pk, b.state, Evaluate(key, b.blinded)));
  EXPECT_NE(DirectPrf(key, input), DirectPrf(key, AsBytes("other call")));
}

TEST(Oprf, KeysSeparateLabels) {
  auto rng = Rng::Seeded(33);
  const auto k1 = OprfServerKey::Generate(rng);
  const auto k2 = OprfServerKey::Generate(rng);
  EXPECT_NE(DirectPrf(k1, AsBytes("x")), DirectPrf(k2, AsBytes("x")));
}

TEST(Oprf, RejectsTamperedEvaluation) {
  auto rng = Rng::Seeded(34);
  const auto key = OprfServerKey::Generate(rng);
  const auto other = OprfServerKey::Generate(rng);
  const auto req = Blind(AsBytes("x"), rng);
  const G1 good = Evaluate(key, req.blinded);
  EXPECT_THROW(Finalize(key.pk, req.state, good + G1::Generator()), Error);
  EXPECT_THROW(Finalize(key.pk, req.state, Evaluate(other, req.blinded)), Error);
  EXPECT_THROW(Finalize(key.pk, req.state, G1()), Error);
  try {
    Finalize(key.pk, req.state, req.blinded);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVerificationFailed);
  }
}

TEST(Oprf, ServerRejectsIdentity) {
  auto rng = Rng::Seeded(35);
  const auto key = OprfServerKey::Generate(rng);
  EXPECT_THROW(Evaluate(key, G1()), Error);
  EXPECT_THROW(BlindWith(AsBytes("x"), Scalar()), Error);
}

}  // namespace
}  // namespace jager::crypto
