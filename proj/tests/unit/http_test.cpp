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

#include "protocol/http.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <nlohmann/json.hpp>

#include "protocol/carrier_client.hpp"
#include "protocol/wire.hpp"

namespace jager {
namespace {

using namespace crypto;
using nlohmann::json;

class HttpTest : public ::testing::Test {
 protected:
  HttpTest() : rng_(Rng::Seeded(90)) {
    TaConfig cfg;
    cfg.trace_limit = 30;
    ta_ = TaService::Setup(rng_, cfg);
    rs_ = RecordStore::Setup(ta_->params().gpk, ta_->params().vk_r, rng_, std::make_unique<MemoryStorage>());
    ta_http_ = std::make_unique<TaHttpService>(*ta_);
    rs_http_ = std::make_unique<RsHttpService>(*rs_);
    ta_url_ = "http://127.0.0.1:" + std::to_string(ta_http_->Bind("127.0.0.1", 0));
    rs_url_ = "http://127.0.0.1:" + std::to_string(rs_http_->Bind("127.0.0.1", 0));
    ta_http_->Start();
    rs_http_->Start();
  }

  int PostStatus(const std::string& url, const std::string& path, const json& body) {
    httplib::Client c(url);
    auto res = c.Post(path, body.dump(), "application/json");
    return res ? res->status : -1;
  }

  Rng rng_;
  std::unique_ptr<TaService> ta_;
  std::unique_ptr<RecordStore> rs_;
  std::unique_ptr<TaHttpService> ta_http_;
  std::unique_ptr<RsHttpService> rs_http_;
  std::string ta_url_, rs_url_;
};

TEST_F(HttpTest, ContributeTraceAndOpenOverHttp) {
  HttpTa ta(ta_url_);
  HttpRs rs(rs_url_);
  std::vector<std::unique_ptr<CarrierClient>> clients;
  for (CarrierId id = 1; id <= 3; ++id) {
    clients.push_back(std::make_unique<CarrierClient>(id, ta, rs));
    clients.back()->Join();
  }
  rs_->SetGroupKey(ta_->params().gpk);
  for (auto& c : clients) c->RefreshParams();

  const CallDetails call{"2025550100", "3125550199", 1'700'000'000'000};
  const std::vector<Hop> hops{{kOriginSentinel, 1, 2}, {1, 2, 3}, {2, 3, kTermSentinel}};
  for (size_t i = 0; i < hops.size(); ++i) {
    ASSERT_EQ(clients[i]->ContributeRecord(call, hops[i], rng_), ContributeStatus::kAccepted);
  }
  const TraceResult r = clients[2]->TraceCall(call, rng_, 2000);
  EXPECT_EQ(r.labels_queried, 5u);
  EXPECT_EQ(r.hops.size(), 3u);
  EXPECT_EQ(r.report.path, (std::vector<CarrierId>{1, 2, 3}));

  const json report = json::parse(ta.Open(clients[2]->BuildOpenBundle(r)));
  EXPECT_TRUE(report["findings"].empty());
  EXPECT_EQ(report["validation"]["path"], json({1, 2, 3}));
}

TEST_F(HttpTest, ParamsEndpointsPublishKeys) {
  HttpTa ta(ta_url_);
  HttpRs rs(rs_url_);
  const PublicParams p = ta.Params();
  EXPECT_EQ(p.vk_t, ta_->params().vk_t);
  EXPECT_EQ(p.oprf_pk, ta_->params().oprf_pk);
  EXPECT_EQ(rs.Params().vk_rs, rs_->vk_rs());
}

TEST_F(HttpTest, StatusCodes) {
  ta_->HandleJoin(1);
  const auto req = Blind(AsBytes("x"), rng_);
  EXPECT_EQ(PostStatus(ta_url_, "/label", {{"carrier_id", 2}, {"blinded", wire::B64(req.blinded)}}), 401);
  EXPECT_EQ(PostStatus(ta_url_, "/label", {{"carrier_id", 1}, {"blinded", "AAAA"}}), 400);
  EXPECT_EQ(PostStatus(ta_url_, "/label", {{"carrier_id", 1}}), 400);
  EXPECT_EQ(PostStatus(ta_url_, "/join", {{"carrier_id", 1}}), 409);
  EXPECT_EQ(PostStatus(ta_url_, "/decrypt-auth", {{"carrier_id", 1}, {"label", std::string(64, 'a')}}), 403);
  EXPECT_EQ(PostStatus(rs_url_, "/retrieve",
                       {{"carrier_id", 1}, {"idx", std::string(64, 'a')},
                        {"sigma_r", wire::B64(BlsSign(Scalar::FromU64(3), AsBytes("x")))}}),
            401);
  for (int i = 0; i < 30; ++i) {
    EXPECT_EQ(PostStatus(ta_url_, "/authorize", {{"carrier_id", 1}, {"idx", std::string(64, 'b')}}), 200);
  }
  EXPECT_EQ(PostStatus(ta_url_, "/authorize", {{"carrier_id", 1}, {"idx", std::string(64, 'b')}}), 429);

  httplib::Client c(ta_url_);
  auto res = c.Post("/label", "not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(HttpTest, ClientMapsErrorsBackToCodes) {
  HttpTa ta(ta_url_);
  try {
    ta.EvaluateLabel(77, G1::Hash(tags::kH1, AsBytes("x")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnauthenticated);
  }
  HttpTa dead("http://127.0.0.1:1");
  try {
    dead.Params();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
}

TEST_F(HttpTest, LabelTranscriptCarriesOnlyGroupElements) {
  ta_->HandleJoin(1);
  std::string transcript;
  {
    httplib::Client c(ta_url_);
    const Bytes input = EncodeCallDetails({"2025550100", "3125550199", 0}, 1700000000);
    const auto req = Blind(input, rng_);
    const json body{{"carrier_id", 1}, {"blinded", wire::B64(req.blinded)}};
    auto res = c.Post("/label", body.dump(), "application/json");
    ASSERT_TRUE(res);
    transcript = body.dump() + res->body;
  }
  for (const std::string& needle : std::vector<std::string>{"2025550100", "3125550199", ToBase64(AsBytes("2025550100")),
                                   ToHex(AsBytes("2025550100"))}) {
    EXPECT_EQ(transcript.find(needle), std::string::npos) << needle;
  }
}

}  // namespace
}  // namespace jager
