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

#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "protocol/rate_limiter.hpp"

namespace jager {

using namespace crypto;

CarrierClient::CarrierClient(CarrierId id, TaEndpoint& ta, RsEndpoint& rs, ClientConfig config)
    : id_(id), ta_(ta), rs_(rs), config_(config) {
  RefreshParams();
  const RsParams rs_params = rs_.Params();
  if (!(rs_params.vk_r == params_.vk_r)) {
    Fail(ErrorCode::kVerificationFailed, "record store and TA disagree on vk_R");
  }
  vk_rs_ = rs_params.vk_rs;
}

void CarrierClient::RefreshParams() { params_ = ta_.Params(); }

MemberKey CarrierClient::Join(const std::optional<Scalar>& request_sk) {
  std::optional<G1> request_vk;
  if (request_sk) request_vk = G1::Generator() * *request_sk;
  member_key_ = ta_.Join(id_, request_vk);
  request_sk_ = request_sk;
  RefreshParams();
  return *member_key_;
}

std::optional<RequestAuth> CarrierClient::Authenticate(std::string_view op, ByteView body) const {
  if (!request_sk_) return std::nullopt;
  return SignRequest(*request_sk_, op, id_, body, SystemClock()());
}

Digest CarrierClient::ComputeLabel(const CallDetails& call, uint64_t epoch, Rng& rng) {
  const Bytes input = EncodeCallDetails(call, epoch);
  const BlindedRequest req = Blind(input, rng);
  const G1 evaluated = ta_.EvaluateLabel(id_, req.blinded);
  return Finalize(params_.oprf_pk, req.state, evaluated);
}

Record CarrierClient::SealRecord(const CallDetails& call, uint64_t epoch, const Digest& label,
                                 const Hop& hop, Rng& rng) const {
  if (!member_key_) Fail(ErrorCode::kUnauthenticated, "carrier has no group credential");
  WesMessage key;
  rng.Fill(key);
  Record rec;
  rec.idx = IndexForLabel(label);
  rec.ct1 = WesEncrypt(params_.vk_t, label, key, rng);
  rec.ct2 = MaskHop(EncodeCallDetails(call, epoch), key, hop);
  rec.gsig = GroupSign(params_.gpk, *member_key_, rec.SignedPayload(), rng);
  return rec;
}

ContributeStatus CarrierClient::ContributeRecord(const CallDetails& call, const Hop& hop, Rng& rng) {
  const uint64_t epoch = EpochOf(call.ts, config_.granularity_ms);
  const Digest label = ComputeLabel(call, epoch, rng);
  return rs_.Contribute(SealRecord(call, epoch, label, hop, rng));
}

TraceResult CarrierClient::TraceCall(const CallDetails& call, Rng& rng,
                                     std::optional<uint64_t> t_max_ms) {
  TraceResult result;
  result.call = call;
  const auto epochs = DeriveEpochs(call.ts, t_max_ms.value_or(config_.t_max_ms), config_.granularity_ms);
  for (uint64_t epoch : epochs) {
    const Digest label = ComputeLabel(call, epoch, rng);
    const Digest idx = IndexForLabel(label);
    ++result.labels_queried;
    const BlsSignature sigma_r = ta_.AuthorizeTrace(id_, idx, Authenticate("authorize", idx));
    RecordSet set = rs_.Retrieve(id_, idx, sigma_r);
    if (set.idx != idx || !set.Verify(vk_rs_)) {
      Fail(ErrorCode::kVerificationFailed, "record store response signature does not verify");
    }
    if (set.records.empty()) continue;
    const BlsSignature sigma_t = ta_.AuthorizeDecrypt(id_, label, Authenticate("decrypt-auth", label));
    if (!BlsVerify(params_.vk_t, label, sigma_t)) {
      Fail(ErrorCode::kVerificationFailed, "decryption authorization does not verify");
    }
    const Bytes encoding = EncodeCallDetails(call, epoch);
    for (auto& sr : set.records) {
      TracedHop th;
      th.epoch = epoch;
      th.label = label;
      th.hop = UnmaskHop(encoding, WesDecrypt(sigma_t, sr.record.ct1), sr.record.ct2);
      th.provenance = std::move(sr);
      (IsSentinel(th.hop.cur) ? result.undecodable : result.hops).push_back(std::move(th));
    }
  }
  result.report = trace::Validate(result.HopList());
  return result;
}

OpenBundle CarrierClient::BuildOpenBundle(const TraceResult& result) const {
  OpenBundle bundle;
  bundle.call = result.call;
  for (const auto* list : {&result.hops, &result.undecodable}) {
    for (const TracedHop& th : *list) {
      const Record& r = th.provenance.record;
      bundle.entries.push_back(OpenEntry{th.epoch, th.label, r.ct1, r.ct2, r.gsig, th.hop});
    }
  }
  return bundle;
}

std::vector<Hop> TraceResult::HopList() const {
  std::vector<Hop> out;
  out.reserve(hops.size());
  for (const auto& th : hops) out.push_back(th.hop);
  return out;
}

std::string TraceResult::ToJson() const {
  using nlohmann::json;
  auto hop_json = [](const TracedHop& th) {
    return json{{"prev", th.hop.prev}, {"cur", th.hop.cur}, {"next", th.hop.next}, {"epoch", th.epoch}};
  };
  json j;
  j["call"] = {{"src", call.src}, {"dst", call.dst}, {"ts", call.ts}};
  j["labels_queried"] = labels_queried;
  j["status"] = NoRecords() ? "no records" : "ok";
  j["hops"] = json::array();
  for (const auto& th : hops) j["hops"].push_back(hop_json(th));
  j["undecodable"] = json::array();
  for (const auto& th : undecodable) j["undecodable"].push_back(hop_json(th));
  j["report"] = json::parse(report.ToJson());
  return j.dump();
}

}  // namespace jager
