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

#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace jager {

using namespace crypto;

TaKeys TaKeys::Generate(Rng& rng) {
  return TaKeys{OprfServerKey::Generate(rng), BlsKeyPair::Generate(rng), BlsKeyPair::Generate(rng),
                GroupManager::Generate(rng)};
}

Bytes RequestPayload(std::string_view op, CarrierId carrier, ByteView body, uint64_t time_ms) {
  Bytes out;
  AppendU64(out, op.size());
  Append(out, AsBytes(op));
  AppendU64(out, carrier);
  AppendU64(out, time_ms);
  Append(out, body);
  return out;
}

RequestAuth SignRequest(const Scalar& sk, std::string_view op, CarrierId carrier, ByteView body,
                        uint64_t time_ms) {
  return RequestAuth{time_ms, BlsSign(sk, RequestPayload(op, carrier, body, time_ms))};
}

TaService::TaService(TaKeys keys, TaConfig config)
    : oprf_(std::move(keys.oprf)),
      sig_t_(std::move(keys.sig_t)),
      sig_r_(std::move(keys.sig_r)),
      config_(std::move(config)),
      gm_(std::move(keys.gm)),
      limiter_(config_.trace_limit, config_.window_ms, config_.clock) {}

std::unique_ptr<TaService> TaService::Setup(Rng& rng, TaConfig config) {
  return std::make_unique<TaService>(TaKeys::Generate(rng), std::move(config));
}

PublicParams TaService::params() const {
  std::shared_lock lock(gm_mu_);
  return PublicParams{oprf_.pk, sig_t_.vk, sig_r_.vk, gm_.public_key()};
}

MemberKey TaService::HandleJoin(CarrierId carrier, const std::optional<G1>& request_vk) {
  if (IsSentinel(carrier)) Fail(ErrorCode::kInvalidArgument, "reserved carrier id");
  if (request_vk && (request_vk->IsIdentity() || !request_vk->InSubgroup())) {
    Fail(ErrorCode::kMalformed, "invalid request key");
  }
  std::unique_lock lock(gm_mu_);
  MemberKey key = gm_.Join(carrier);
  if (request_vk) request_keys_[carrier] = *request_vk;
  return key;
}

MemberKey TaService::IssuedKey(CarrierId carrier) const {
  std::shared_lock lock(gm_mu_);
  return gm_.IssuedKey(carrier);
}

void TaService::Revoke(CarrierId carrier) {
  std::unique_lock lock(gm_mu_);
  gm_.Revoke(carrier);
  request_keys_.erase(carrier);
}

bool TaService::IsEnrolled(CarrierId carrier) const {
  std::shared_lock lock(gm_mu_);
  return gm_.IsMember(carrier);
}

void TaService::RequireEnrolled(CarrierId carrier) const {
  if (!IsEnrolled(carrier)) Fail(ErrorCode::kUnauthenticated, "carrier is not enrolled");
}

void TaService::CheckRequestAuth(std::string_view op, CarrierId carrier, ByteView body,
                                 const std::optional<RequestAuth>& auth) const {
  G1 vk;
  {
    std::shared_lock lock(gm_mu_);
    if (!gm_.IsMember(carrier)) Fail(ErrorCode::kUnauthenticated, "carrier is not enrolled");
    auto it = request_keys_.find(carrier);
    if (it == request_keys_.end()) return;
    vk = it->second;
  }
  if (!auth) Fail(ErrorCode::kUnauthenticated, "request signature required");
  const uint64_t now = config_.clock();
  const uint64_t skew = now > auth->time_ms ? now - auth->time_ms : auth->time_ms - now;
  if (skew > config_.request_skew_ms) Fail(ErrorCode::kUnauthenticated, "request timestamp out of range");
  if (!BlsVerify(vk, RequestPayload(op, carrier, body, auth->time_ms), auth->sig)) {
    Fail(ErrorCode::kUnauthenticated, "request signature does not verify");
  }
}

G1 TaService::HandleLabelRequest(CarrierId carrier, const G1& blinded) const {
  RequireEnrolled(carrier);
  return Evaluate(oprf_, blinded);
}

BlsSignature TaService::HandleTraceAuthorization(CarrierId carrier, const Digest& idx,
                                                 const std::optional<RequestAuth>& auth) {
  CheckRequestAuth("authorize", carrier, idx, auth);
  if (!limiter_.TryAcquire(carrier)) Fail(ErrorCode::kRateLimited, "trace authorization limit reached");
  BlsSignature sigma_r = BlsSign(sig_r_.sk, idx);
  std::lock_guard lock(log_mu_);
  auth_log_.push_back({carrier, idx, config_.clock()});
  granted_.emplace(carrier, idx);
  return sigma_r;
}

BlsSignature TaService::HandleDecryptAuthorization(CarrierId carrier, const Digest& label,
                                                   const std::optional<RequestAuth>& auth) {
  CheckRequestAuth("decrypt-auth", carrier, label, auth);
  {
    std::lock_guard lock(log_mu_);
    if (!granted_.count({carrier, IndexForLabel(label)})) {
      Fail(ErrorCode::kPermissionDenied, "no trace authorization for this label");
    }
  }
  return BlsSign(sig_t_.sk, label);
}

std::vector<AuthLogEntry> TaService::auth_log() const {
  std::lock_guard lock(log_mu_);
  return auth_log_;
}

TaKeys TaService::ExportKeys() const {
  std::shared_lock lock(gm_mu_);
  return TaKeys{oprf_, sig_t_, sig_r_, gm_};
}

std::map<CarrierId, G1> TaService::request_keys() const {
  std::shared_lock lock(gm_mu_);
  return request_keys_;
}

void TaService::RestoreRequestKeys(const std::map<CarrierId, G1>& keys) {
  std::unique_lock lock(gm_mu_);
  request_keys_ = keys;
}

AccountabilityReport TaService::HandleOpenRequest(const OpenBundle& bundle) const {
  AccountabilityReport report;
  std::vector<Hop> hops;
  std::vector<size_t> hop_entry;
  std::shared_lock lock(gm_mu_);

  auto try_open = [&](const GroupSignature& sig) -> std::optional<CarrierId> {
    try {
      return gm_.Open(sig);
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  for (size_t i = 0; i < bundle.entries.size(); ++i) {
    const OpenEntry& e = bundle.entries[i];
    const Bytes encoding = EncodeCallDetails(bundle.call, e.epoch);
    if (DirectPrf(oprf_, encoding) != e.label) {
      report.findings.push_back({i, "label does not match call details", std::nullopt});
      continue;
    }
    Record rec;
    rec.idx = IndexForLabel(e.label);
    rec.ct1 = e.ct1;
    rec.ct2 = e.ct2;
    if (!gm_.VerifyAnyEpoch(rec.SignedPayload(), e.gsig)) {
      report.findings.push_back({i, "group signature does not verify", std::nullopt});
      continue;
    }
    const WesMessage key = WesDecrypt(BlsSign(sig_t_.sk, e.label), e.ct1);
    const Hop hop = UnmaskHop(encoding, key, e.ct2);
    if (IsSentinel(hop.cur)) {
      const auto signer = try_open(e.gsig);
      report.findings.push_back({i, "record does not decrypt to a hop", signer});
      if (signer) report.faulty_signers.insert(*signer);
      continue;
    }
    if (hop != e.hop) {
      report.findings.push_back({i, "claimed hop differs from ciphertext", std::nullopt});
    }
    hops.push_back(hop);
    hop_entry.push_back(i);
  }

  report.validation = trace::Validate(hops);
  const auto faulty = report.validation.AllFaulty();
  for (size_t h = 0; h < hops.size(); ++h) {
    if (!faulty.count(hops[h].cur)) continue;
    const size_t i = hop_entry[h];
    const auto signer = try_open(bundle.entries[i].gsig);
    report.findings.push_back({i, "hop violates call-path invariants", signer});
    if (signer) report.faulty_signers.insert(*signer);
  }
  return report;
}

std::string AccountabilityReport::ToJson() const {
  using nlohmann::json;
  json findings_json = json::array();
  for (const auto& f : findings) {
    findings_json.push_back({{"entry", f.entry},
                             {"problem", f.problem},
                             {"signer", f.signer ? json(*f.signer) : json(nullptr)}});
  }
  json j;
  j["validation"] = json::parse(validation.ToJson());
  j["findings"] = findings_json;
  j["faulty_signers"] = faulty_signers;
  return j.dump();
}

}  // namespace jager
