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

#include "protocol/ta_service.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "common/error.hpp"

namespace jager {
namespace {

using namespace crypto;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInternal;
}

class TaServiceTest : public ::testing::Test {
 protected:
  TaServiceTest() : rng_(Rng::Seeded(70)) {
    TaConfig cfg;
    cfg.trace_limit = 2;
    cfg.clock = [this] { return now_.load(); };
    ta_ = TaService::Setup(rng_, cfg);
  }

  Digest RandomDigest() {
    Digest d;
    rng_.Fill(d);
    return d;
  }

  Rng rng_;
  std::atomic<uint64_t> now_{1'700'000'000'000};
  std::unique_ptr<TaService> ta_;
};

TEST_F(TaServiceTest, PublishedKeysMatchSecrets) {
  const TaKeys keys = ta_->ExportKeys();
  const PublicParams p = ta_->params();
  EXPECT_EQ(p.oprf_pk, G2::Generator() * keys.oprf.k);
  EXPECT_EQ(p.vk_t, G1::Generator() * keys.sig_t.sk);
  EXPECT_EQ(p.vk_r, G1::Generator() * keys.sig_r.sk);
  EXPECT_EQ(p.gpk.ToBytes(), keys.gm.public_key().ToBytes());
  EXPECT_EQ(ta_->config().trace_limit, 2u);
  auto other = TaService::Setup(rng_);
  EXPECT_FALSE(other->params().vk_t == p.vk_t);
  EXPECT_FALSE(other->params().oprf_pk == p.oprf_pk);
}

TEST_F(TaServiceTest, JoinDelegatesToGroupManager) {
  const MemberKey key = ta_->HandleJoin(4);
  EXPECT_EQ(key.id, 4u);
  EXPECT_TRUE(ta_->IsEnrolled(4));
  EXPECT_EQ(CodeOf([&] { ta_->HandleJoin(4); }), ErrorCode::kAlreadyExists);
  EXPECT_EQ(CodeOf([&] { ta_->HandleJoin(kOriginSentinel); }), ErrorCode::kInvalidArgument);
  ta_->HandleJoin(5);
  EXPECT_EQ(ta_->ExportKeys().gm.size(), 2u);
}

TEST_F(TaServiceTest, LabelRequestMatchesDirectPrf) {
  ta_->HandleJoin(1);
  const Bytes input = EncodeCallDetails({"2025550100", "3125550199", 0}, 1700000000);
  const auto req = Blind(input, rng_);
  const G1 out = ta_->HandleLabelRequest(1, req.blinded);
  EXPECT_EQ(Finalize(ta_->params().oprf_pk, req.state, out), DirectPrf(ta_->ExportKeys().oprf, input));
  EXPECT_EQ(CodeOf([&] { ta_->HandleLabelRequest(2, req.blinded); }), ErrorCode::kUnauthenticated);
  EXPECT_EQ(CodeOf([&] { ta_->HandleLabelRequest(1, G1()); }), ErrorCode::kMalformed);
}

TEST_F(TaServiceTest, TraceAuthorizationRateLimited) {
  ta_->HandleJoin(1);
  const Digest idx = RandomDigest();
  const auto s1 = ta_->HandleTraceAuthorization(1, idx);
  EXPECT_TRUE(BlsVerify(ta_->params().vk_r, idx, s1));
  ta_->HandleTraceAuthorization(1, RandomDigest());
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(1, RandomDigest()); }), ErrorCode::kRateLimited);
  EXPECT_EQ(ta_->auth_log().size(), 2u);
  now_ += kDayMs;
  ta_->HandleTraceAuthorization(1, RandomDigest());
  EXPECT_EQ(ta_->auth_log().size(), 3u);
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(9, idx); }), ErrorCode::kUnauthenticated);
}

TEST_F(TaServiceTest, AuthLogCountsGrantsUnderContention) {
  TaConfig cfg;
  cfg.trace_limit = 50;
  auto ta = TaService::Setup(rng_, cfg);
  for (CarrierId c = 1; c <= 4; ++c) ta->HandleJoin(c);
  std::atomic<int> granted{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 40; ++i) {
        try {
          ta->HandleTraceAuthorization(1 + t % 4, Digest{static_cast<uint8_t>(i)});
          ++granted;
        } catch (const Error&) {
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(granted.load(), 200);
  EXPECT_EQ(ta->auth_log().size(), 200u);
}

TEST_F(TaServiceTest, DecryptionRequiresPriorGrant) {
  ta_->HandleJoin(1);
  ta_->HandleJoin(2);
  const Digest label = RandomDigest();
  EXPECT_EQ(CodeOf([&] { ta_->HandleDecryptAuthorization(1, label); }), ErrorCode::kPermissionDenied);
  ta_->HandleTraceAuthorization(1, IndexForLabel(label));
  const auto sigma_t = ta_->HandleDecryptAuthorization(1, label);
  EXPECT_TRUE(BlsVerify(ta_->params().vk_t, label, sigma_t));
  EXPECT_EQ(CodeOf([&] { ta_->HandleDecryptAuthorization(2, label); }), ErrorCode::kPermissionDenied);

  WesMessage m{};
  m[5] = 9;
  const auto ct = WesEncrypt(ta_->params().vk_t, label, m, rng_);
  EXPECT_EQ(WesDecrypt(sigma_t, ct), m);
}

TEST_F(TaServiceTest, EveryDecryptionGrantHasMatchingTraceGrant) {
  ta_->HandleJoin(1);
  std::vector<Digest> labels;
  for (int i = 0; i < 2; ++i) {
    labels.push_back(RandomDigest());
    ta_->HandleTraceAuthorization(1, IndexForLabel(labels.back()));
  }
  for (const auto& l : labels) ta_->HandleDecryptAuthorization(1, l);
  for (const auto& l : labels) {
    const auto log = ta_->auth_log();
    EXPECT_TRUE(std::any_of(log.begin(), log.end(), [&](const AuthLogEntry& e) {
      return e.carrier == 1 && e.idx == IndexForLabel(l);
    }));
  }
}

TEST_F(TaServiceTest, SignedRequestsWhenRequestKeyRegistered) {
  const Scalar sk = Scalar::RandomNonZero(rng_);
  ta_->HandleJoin(3, G1::Generator() * sk);
  const Digest idx = RandomDigest();
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(3, idx); }), ErrorCode::kUnauthenticated);
  const auto wrong = SignRequest(Scalar::FromU64(7), "authorize", 3, idx, now_);
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(3, idx, wrong); }), ErrorCode::kUnauthenticated);
  const auto stale = SignRequest(sk, "authorize", 3, idx, now_ - 10 * 60 * 1000);
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(3, idx, stale); }), ErrorCode::kUnauthenticated);
  const auto other_op = SignRequest(sk, "decrypt-auth", 3, idx, now_);
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(3, idx, other_op); }), ErrorCode::kUnauthenticated);
  ta_->HandleTraceAuthorization(3, idx, SignRequest(sk, "authorize", 3, idx, now_));
  EXPECT_EQ(ta_->auth_log().size(), 1u);
}

TEST_F(TaServiceTest, RevokedCarrierLosesAccess) {
  ta_->HandleJoin(1);
  ta_->HandleJoin(2);
  ta_->Revoke(1);
  EXPECT_FALSE(ta_->IsEnrolled(1));
  EXPECT_EQ(CodeOf([&] { ta_->HandleTraceAuthorization(1, RandomDigest()); }), ErrorCode::kUnauthenticated);
  EXPECT_EQ(ta_->params().gpk.epoch, 1u);
  EXPECT_EQ(ta_->IssuedKey(2).epoch, 1u);
}

}  // namespace
}  // namespace jager
