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

#ifndef JAGER_PROTOCOL_CARRIER_CLIENT_HPP_
#define JAGER_PROTOCOL_CARRIER_CLIENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "protocol/endpoints.hpp"
#include "trace/validate.hpp"

namespace jager {

struct ClientConfig {
  uint64_t granularity_ms = 1000;
  uint64_t t_max_ms = 10000;
};

struct TracedHop {
  Hop hop;
  uint64_t epoch = 0;
  Digest label{};
  SignedRecord provenance;
};

struct TraceResult {
  CallDetails call;
  size_t labels_queried = 0;
  std::vector<TracedHop> hops;
  // Records that decrypted to something that is not a hop.
  std::vector<TracedHop> undecodable;
  trace::ValidationReport report;

  bool NoRecords() const { return hops.empty() && undecodable.empty(); }
  std::vector<Hop> HopList() const;
  std::string ToJson() const;
};

// Carrier-side driver for contribution and traceback. Holds no mutable
// state besides its credentials, so one client can contribute from several
// threads once enrolled.
class CarrierClient {
 public:
  CarrierClient(CarrierId id, TaEndpoint& ta, RsEndpoint& rs, ClientConfig config = {});

  CarrierId id() const { return id_; }
  const PublicParams& params() const { return params_; }
  // Re-reads the TA's public parameters (e.g. after a revocation).
  void RefreshParams();

  // Enrolls with the TA. With a request key the TA will require signed
  // authorization requests from this carrier.
  crypto::MemberKey Join(const std::optional<crypto::Scalar>& request_sk = std::nullopt);
  void SetMemberKey(const crypto::MemberKey& key) { member_key_ = key; }
  void SetRequestKey(const crypto::Scalar& sk) { request_sk_ = sk; }
  const std::optional<crypto::MemberKey>& member_key() const { return member_key_; }

  // Obliviously evaluated label for (src, dst, epoch).
  Digest ComputeLabel(const CallDetails& call, uint64_t epoch, Rng& rng);

  // Encrypts and signs a hop record for an already derived label.
  Record SealRecord(const CallDetails& call, uint64_t epoch, const Digest& label, const Hop& hop,
                    Rng& rng) const;

  // Label, seal, submit. The epoch comes from call.ts.
  ContributeStatus ContributeRecord(const CallDetails& call, const Hop& hop, Rng& rng);

  // Queries every epoch in [ts - t_max, ts + t_max], decrypts the returned
  // hops and validates them.
  TraceResult TraceCall(const CallDetails& call, Rng& rng, std::optional<uint64_t> t_max_ms = {});

  // Everything the TA needs to attribute faulty hops in a trace.
  OpenBundle BuildOpenBundle(const TraceResult& result) const;

 private:
  std::optional<RequestAuth> Authenticate(std::string_view op, ByteView body) const;

  CarrierId id_;
  TaEndpoint& ta_;
  RsEndpoint& rs_;
  ClientConfig config_;
  PublicParams params_;
  crypto::G1 vk_rs_;
  std::optional<crypto::MemberKey> member_key_;
  std::optional<crypto::Scalar> request_sk_;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_CARRIER_CLIENT_HPP_
