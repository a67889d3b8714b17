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

#include "protocol/carrier_client.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "protocol/wire.hpp"

namespace jager {
namespace {

using namespace crypto;

constexpr uint64_t kTs = 1'700'000'000'000;

class TamperingTa : public InProcessTa {
 public:
  using InProcessTa::InProcessTa;
  G1 EvaluateLabel(CarrierId carrier, const G1& blinded) override {
    return InProcessTa::EvaluateLabel(carrier, blinded) + G1::Generator();
  }
};

class TamperingRs : public InProcessRs {
 public:
  using InProcessRs::InProcessRs;
  RecordSet Retrieve(CarrierId carrier, const Digest& idx, const BlsSignature& sigma_r) override {
    RecordSet set = InProcessRs::Retrieve(carrier, idx, sigma_r);
    if (!set.records.empty()) set.records[0].record.ct2[0] ^= 1;
    return set;
  }
};

class CarrierClientTest : public ::testing::Test {
 protected:
  CarrierClientTest()
      : rng_(Rng::Seeded(80)),
        ta_(TaService::Setup(rng_)),
        rs_(RecordStore::Setup(ta_->params().gpk, ta_->params().vk_r, rng_,
                               std::make_unique<MemoryStorage>())),
        ta_ep_(*ta_),
        rs_ep_(*rs_) {}

  // Enrolls carriers 1..n; rs_ learns the final group key.
  void Enroll(CarrierId n) {
    for (CarrierId id = 1; id <= n; ++id) {
      clients_.push_back(std::make_unique<CarrierClient>(id, ta_ep_, rs_ep_));
      clients_.back()->Join();
    }
    rs_->SetGroupKey(ta_->params().gpk);
    for (auto& c : clients_) c->RefreshParams();
  }

  CarrierClient& Client(CarrierId id) { return *clients_.at(id - 1); }

  // Contributes the honest hop records for a call along `path`.
  void ContributePath(const CallDetails& call, const std::vector<CarrierId>& path, uint64_t step_ms = 150) {
    for (size_t i = 0; i < path.size(); ++i) {
      Hop hop{i == 0 ? kOriginSentinel : path[i - 1], path[i],
              i + 1 == path.size() ? kTermSentinel : path[i + 1]};
      CallDetails at = call;
      at.ts = call.ts + i * step_ms;
      ASSERT_EQ(Client(path[i]).ContributeRecord(at, hop, rng_), ContributeStatus::kAccepted);
    }
  }

  Rng rng_;
  std::unique_ptr<TaService> ta_;
  std::unique_ptr<RecordStore> rs_;
  InProcessTa ta_ep_;
  InProcessRs rs_ep_;
  std::vector<std::unique_ptr<CarrierClient>> clients_;
};

TEST_F(CarrierClientTest, LabelEqualsDirectPrfAndIsCarrierIndependent) {
  Enroll(2);
  const CallDetails call{"2025550100", "3125550199", kTs};
  const uint64_t ep = EpochOf(kTs, 1000);
  const Digest a = Client(1).ComputeLabel(call, ep, rng_);
  EXPECT_EQ(a, DirectPrf(ta_->ExportKeys().oprf, EncodeCallDetails(call, ep)));
  EXPECT_EQ(Client(2).ComputeLabel(call, ep, rng_), a);
  EXPECT_NE(Client(1).ComputeLabel(call, ep + 1, rng_), a);
}

TEST_F(CarrierClientTest, TamperedLabelResponseRejected) {
  Enroll(1);
  TamperingTa bad(*ta_);
  CarrierClient c(1, bad, rs_ep_);
  try {
    c.ComputeLabel({"2025550100", "3125550199", kTs}, 1, rng_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVerificationFailed);
  }
}

TEST_F(CarrierClientTest, HopMaskMatchesIndependentRecomputation) {
  Enroll(1);
  const CallDetails call{"2025550100", "3125550199", kTs};
  const uint64_t ep = EpochOf(kTs, 1000);
  const Digest label = Client(1).ComputeLabel(call, ep, rng_);
  const Hop hop{kOriginSentinel, 1, 42};
  const Record rec = Client(1).SealRecord(call, ep, label, hop, rng_);

  const WesMessage key = WesDecrypt(BlsSign(ta_->ExportKeys().sig_t.sk, label), rec.ct1);
  Bytes input;
  Append(input, AsBytes("20255501003125550199"));
  AppendU64(input, ep);
  Append(input, key);
  const Bytes mask = ExpandMessage("JAGER-H3", input, 24);
  const auto plain = hop.Encode();
  for (size_t i = 0; i < 24; ++i) EXPECT_EQ(rec.ct2[i] ^ mask[i], plain[i]);
  EXPECT_EQ(rec.idx, HashToDigest("JAGER-IDX", label));
}

TEST_F(CarrierClientTest, SubmissionSizeNearTwoKilobytes) {
  Enroll(1);
  const CallDetails call{"2025550100", "3125550199", kTs};
  const Record rec = Client(1).SealRecord(call, 1, Digest{}, Hop{0, 1, 2}, rng_);
  const size_t json_bytes = wire::ToJson(rec).dump().size();
  EXPECT_GE(json_bytes, 950u);
  EXPECT_LE(json_bytes, 3800u);
  EXPECT_EQ(rec.SignedPayload().size() + GroupSignature::kBytes, 1048u);
}

TEST_F(CarrierClientTest, FiveHopCallRecovered) {
  Enroll(6);
  const CallDetails call{"2025550100", "3125550199", kTs};
  const std::vector<CarrierId> path{3, 1, 5, 2, 6};
  ContributePath(call, path);
  CallDetails at_dst = call;
  at_dst.ts += 4 * 150;
  const TraceResult r = Client(6).TraceCall(at_dst, rng_);
  EXPECT_EQ(r.labels_queried, 21u);
  ASSERT_EQ(r.hops.size(), 5u);
  EXPECT_TRUE(r.report.NoFaults());
  EXPECT_EQ(r.report.origin, std::optional<CarrierId>(3));
  EXPECT_EQ(r.report.path, path);
  for (const auto& th : r.hops) {
    EXPECT_TRUE(BlsVerify(rs_->vk_rs(), th.provenance.record.SignedPayload(), th.provenance.sigma_rs));
  }
  const auto j = nlohmann::json::parse(r.ToJson());
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["report"]["origin"]["selected"], 3);
}

TEST_F(CarrierClientTest, NoRecordsReported) {
  Enroll(1);
  const TraceResult r = Client(1).TraceCall({"2025550100", "3125550199", kTs}, rng_);
  EXPECT_TRUE(r.NoRecords());
  EXPECT_EQ(nlohmann::json::parse(r.ToJson())["status"], "no records");
}

TEST_F(CarrierClientTest, OriginatorOnlyContributionIdentifiesOrigin) {
  Enroll(3);
  const CallDetails call{"2025550100", "3125550199", kTs};
  ASSERT_EQ(Client(2).ContributeRecord(call, Hop{kOriginSentinel, 2, 3}, rng_), ContributeStatus::kAccepted);
  const TraceResult r = Client(3).TraceCall(call, rng_);
  ASSERT_EQ(r.hops.size(), 1u);
  EXPECT_EQ(r.report.origin, std::optional<CarrierId>(2));
}

TEST_F(CarrierClientTest, TraceIsIsolatedFromOtherCalls) {
  Enroll(4);
  const CallDetails call{"2025550100", "3125550199", kTs};
  ContributePath(call, {1, 2, 3});
  ContributePath({"2025550100", "3125550198", kTs}, {1, 4});
  ContributePath({"2025550101", "3125550199", kTs}, {4, 3});
  ContributePath({"2025550100", "3125550199", kTs + 60'000}, {4, 3});
  const TraceResult r = Client(3).TraceCall(call, rng_);
  std::vector<Hop> expected{{kOriginSentinel, 1, 2}, {1, 2, 3}, {2, 3, kTermSentinel}};
  auto got = r.HopList();
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(got, expected);
}

TEST_F(CarrierClientTest, TamperedResponseDetected) {
  Enroll(2);
  const CallDetails call{"2025550100", "3125550199", kTs};
  ContributePath(call, {1, 2});
  TamperingRs bad(*rs_);
  CarrierClient c(2, ta_ep_, bad);
  c.SetMemberKey(*Client(2).member_key());
  try {
    c.TraceCall(call, rng_, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVerificationFailed);
  }
}

TEST_F(CarrierClientTest, RateLimitSurfacesDistinctly) {
  TaConfig cfg;
  cfg.trace_limit = 5;
  auto ta = TaService::Setup(rng_, cfg);
  InProcessTa ta_ep(*ta);
  auto rs = RecordStore::Setup(ta->params().gpk, ta->params().vk_r, rng_, std::make_unique<MemoryStorage>());
  InProcessRs rs_ep(*rs);
  CarrierClient c(1, ta_ep, rs_ep);
  c.Join();
  try {
    c.TraceCall({"2025550100", "3125550199", kTs}, rng_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRateLimited);
  }
}

TEST_F(CarrierClientTest, SignedRequestsEndToEnd) {
  CarrierClient c(1, ta_ep_, rs_ep_);
  c.Join(Scalar::RandomNonZero(rng_));
  rs_->SetGroupKey(ta_->params().gpk);
  const CallDetails call{"2025550100", "3125550199", kTs};
  c.ContributeRecord(call, Hop{kOriginSentinel, 1, kTermSentinel}, rng_);
  EXPECT_EQ(c.TraceCall(call, rng_, 0).hops.size(), 1u);
}

TEST_F(CarrierClientTest, OpenHonestBundleHasNoFaults) {
  Enroll(4);
  const CallDetails call{"2025550100", "3125550199", kTs};
  ContributePath(call, {1, 2, 3, 4}, 0);
  const TraceResult r = Client(4).TraceCall(call, rng_, 0);
  const auto report = ta_->HandleOpenRequest(Client(4).BuildOpenBundle(r));
  EXPECT_TRUE(report.findings.empty());
  EXPECT_TRUE(report.faulty_signers.empty());
  EXPECT_EQ(report.validation.path, (std::vector<CarrierId>{1, 2, 3, 4}));
}

TEST_F(CarrierClientTest, OpenAttributesFabricatedHop) {
  Enroll(9);
  const CallDetails call{"2025550100", "3125550199", kTs};
  ContributePath(call, {1, 2, 3, 4}, 0);
  // Carrier 9 fabricates an origin claim for carrier 5 in front of carrier 2.
  ASSERT_EQ(Client(9).ContributeRecord(call, Hop{kOriginSentinel, 5, 2}, rng_), ContributeStatus::kAccepted);
  const TraceResult r = Client(4).TraceCall(call, rng_, 0);
  EXPECT_FALSE(r.report.NoFaults());
  const auto report = ta_->HandleOpenRequest(Client(4).BuildOpenBundle(r));
  EXPECT_TRUE(report.faulty_signers.count(9));
  EXPECT_FALSE(report.faulty_signers.count(1));
  EXPECT_FALSE(report.faulty_signers.count(4));
  EXPECT_EQ(report.validation.origin, std::optional<CarrierId>(1));
}

TEST_F(CarrierClientTest, OpenFlagsLabelMismatchOnly) {
  Enroll(3);
  const CallDetails call{"2025550100", "3125550199", kTs};
  ContributePath(call, {1, 2, 3}, 0);
  const TraceResult r = Client(3).TraceCall(call, rng_, 0);
  OpenBundle bundle = Client(3).BuildOpenBundle(r);
  bundle.entries[1].label[0] ^= 1;
  const auto report = ta_->HandleOpenRequest(bundle);
  ASSERT_EQ(report.findings.size(), 1u);
  EXPECT_EQ(report.findings[0].entry, 1u);
  EXPECT_EQ(report.findings[0].problem, "label does not match call details");
}

}  // namespace
}  // namespace jager
