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

#ifndef JAGER_PROTOCOL_ENDPOINTS_HPP_
#define JAGER_PROTOCOL_ENDPOINTS_HPP_

#include <optional>
#include <string>

#include "protocol/record_store.hpp"
#include "protocol/ta_service.hpp"

namespace jager {

// What a carrier needs from the traceback authority. Implemented in
// process and over HTTP.
class TaEndpoint {
 public:
  virtual ~TaEndpoint() = default;
  virtual PublicParams Params() = 0;
  virtual crypto::MemberKey Join(CarrierId carrier, const std::optional<crypto::G1>& request_vk) = 0;
  virtual crypto::G1 EvaluateLabel(CarrierId carrier, const crypto::G1& blinded) = 0;
  virtual crypto::BlsSignature AuthorizeTrace(CarrierId carrier, const Digest& idx,
                                              const std::optional<RequestAuth>& auth) = 0;
  virtual crypto::BlsSignature AuthorizeDecrypt(CarrierId carrier, const Digest& label,
                                                const std::optional<RequestAuth>& auth) = 0;
  // Returns the accountability report as JSON.
  virtual std::string Open(const OpenBundle& bundle) = 0;
};

struct RsParams {
  crypto::G1 vk_rs;
  crypto::G1 vk_r;
};

class RsEndpoint {
 public:
  virtual ~RsEndpoint() = default;
  virtual RsParams Params() = 0;
  virtual ContributeStatus Contribute(const Record& submission) = 0;
  virtual RecordSet Retrieve(CarrierId carrier, const Digest& idx,
                             const crypto::BlsSignature& sigma_r) = 0;
};

class InProcessTa : public TaEndpoint {
 public:
  explicit InProcessTa(TaService& ta) : ta_(ta) {}
  PublicParams Params() override { return ta_.params(); }
  crypto::MemberKey Join(CarrierId carrier, const std::optional<crypto::G1>& request_vk) override {
    return ta_.HandleJoin(carrier, request_vk);
  }
  crypto::G1 EvaluateLabel(CarrierId carrier, const crypto::G1& blinded) override {
    return ta_.HandleLabelRequest(carrier, blinded);
  }
  crypto::BlsSignature AuthorizeTrace(CarrierId carrier, const Digest& idx,
                                      const std::optional<RequestAuth>& auth) override {
    return ta_.HandleTraceAuthorization(carrier, idx, auth);
  }
  crypto::BlsSignature AuthorizeDecrypt(CarrierId carrier, const Digest& label,
                                        const std::optional<RequestAuth>& auth) override {
    return ta_.HandleDecryptAuthorization(carrier, label, auth);
  }
  std::string Open(const OpenBundle& bundle) override { return ta_.HandleOpenRequest(bundle).ToJson(); }

 private:
  TaService& ta_;
};

class InProcessRs : public RsEndpoint {
 public:
  explicit InProcessRs(RecordStore& rs) : rs_(rs) {}
  RsParams Params() override { return {rs_.vk_rs(), rs_.vk_r()}; }
  ContributeStatus Contribute(const Record& submission) override { return rs_.Contribute(submission); }
  RecordSet Retrieve(CarrierId carrier, const Digest& idx, const crypto::BlsSignature& sigma_r) override {
    return rs_.Retrieve(carrier, idx, sigma_r);
  }

 private:
  RecordStore& rs_;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_ENDPOINTS_HPP_
