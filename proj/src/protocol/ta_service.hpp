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

#ifndef JAGER_PROTOCOL_TA_SERVICE_HPP_
#define JAGER_PROTOCOL_TA_SERVICE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "crypto/groupsig.hpp"
#include "crypto/oprf.hpp"
#include "protocol/rate_limiter.hpp"
#include "protocol/record.hpp"
#include "trace/validate.hpp"

namespace jager {

// Constants every carrier and the record store hold.
struct PublicParams {
  crypto::G2 oprf_pk;
  crypto::G1 vk_t;
  crypto::G1 vk_r;
  crypto::GroupPublicKey gpk;
};

struct TaKeys {
  crypto::OprfServerKey oprf;
  crypto::BlsKeyPair sig_t;
  crypto::BlsKeyPair sig_r;
  crypto::GroupManager gm;

  static TaKeys Generate(Rng& rng);
};

struct TaConfig {
  uint64_t trace_limit = 1000;
  uint64_t window_ms = kDayMs;
  uint64_t granularity_ms = 1000;
  // Accepted clock difference for signed requests.
  uint64_t request_skew_ms = 5 * 60 * 1000;
  Clock clock = SystemClock();
};

// Optional per-request authentication: a BLS signature with the carrier's
// request key over RequestPayload(...).
struct RequestAuth {
  uint64_t time_ms = 0;
  crypto::BlsSignature sig;
};

Bytes RequestPayload(std::string_view op, CarrierId carrier, ByteView body, uint64_t time_ms);
RequestAuth SignRequest(const crypto::Scalar& sk, std::string_view op, CarrierId carrier,
                        ByteView body, uint64_t time_ms);

struct AuthLogEntry {
  CarrierId carrier;
  Digest idx;
  uint64_t time_ms;
};

// One retrieved record plus what the submitting carrier claims it decrypts to.
struct OpenEntry {
  uint64_t epoch = 0;
  Digest label{};
  crypto::WesCiphertext ct1;
  HopCiphertext ct2{};
  crypto::GroupSignature gsig;
  Hop hop;
};

struct OpenBundle {
  CallDetails call;
  std::vector<OpenEntry> entries;
};

struct EntryFinding {
  size_t entry = 0;
  std::string problem;
  std::optional<CarrierId> signer;
};

struct AccountabilityReport {
  trace::ValidationReport validation;
  std::vector<EntryFinding> findings;
  std::set<CarrierId> faulty_signers;

  std::string ToJson() const;
};

class TaService {
 public:
  TaService(TaKeys keys, TaConfig config = {});
  static std::unique_ptr<TaService> Setup(Rng& rng, TaConfig config = {});

  PublicParams params() const;

  // Enrolls a carrier. When request_vk is given, authorization requests
  // from this carrier must carry a RequestAuth made with its secret.
  crypto::MemberKey HandleJoin(CarrierId carrier,
                               const std::optional<crypto::G1>& request_vk = std::nullopt);
  // Current credential for an enrolled carrier.
  crypto::MemberKey IssuedKey(CarrierId carrier) const;
  void Revoke(CarrierId carrier);

  crypto::G1 HandleLabelRequest(CarrierId carrier, const crypto::G1& blinded) const;

  // sigma_R on idx. Throws kUnauthenticated for unknown carriers and
  // kRateLimited once the carrier has T grants inside the window.
  crypto::BlsSignature HandleTraceAuthorization(CarrierId carrier, const Digest& idx,
                                                const std::optional<RequestAuth>& auth = {});

  // sigma_T on the label; requires an earlier grant for H(label) to the
  // same carrier (kPermissionDenied otherwise).
  crypto::BlsSignature HandleDecryptAuthorization(CarrierId carrier, const Digest& label,
                                                  const std::optional<RequestAuth>& auth = {});

  AccountabilityReport HandleOpenRequest(const OpenBundle& bundle) const;

  bool IsEnrolled(CarrierId carrier) const;
  std::vector<AuthLogEntry> auth_log() const;
  uint64_t GrantsInWindow(CarrierId carrier) { return limiter_.Count(carrier); }
  const TaConfig& config() const { return config_; }

  // Copy of the key material, for persisting to a key file.
  TaKeys ExportKeys() const;
  std::map<CarrierId, crypto::G1> request_keys() const;
  void RestoreRequestKeys(const std::map<CarrierId, crypto::G1>& keys);

 private:
  void RequireEnrolled(CarrierId carrier) const;
  void CheckRequestAuth(std::string_view op, CarrierId carrier, ByteView body,
                        const std::optional<RequestAuth>& auth) const;

  const crypto::OprfServerKey oprf_;
  const crypto::BlsKeyPair sig_t_;
  const crypto::BlsKeyPair sig_r_;
  TaConfig config_;

  mutable std::shared_mutex gm_mu_;
  crypto::GroupManager gm_;
  std::map<CarrierId, crypto::G1> request_keys_;

  RateLimiter limiter_;
  mutable std::mutex log_mu_;
  std::vector<AuthLogEntry> auth_log_;
  std::set<std::pair<CarrierId, Digest>> granted_;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_TA_SERVICE_HPP_
