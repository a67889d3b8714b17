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

#include "protocol/record_store.hpp"

#include "common/error.hpp"

namespace jager {

using namespace crypto;

RecordStore::RecordStore(BlsKeyPair keys, GroupPublicKey gpk, G1 vk_r,
                         std::unique_ptr<RecordStorage> storage, RecordStoreConfig config)
    : keys_(std::move(keys)),
      vk_r_(vk_r),
      gpk_(std::make_shared<const GroupPublicKey>(std::move(gpk))),
      storage_(std::move(storage)),
      clock_(config.clock),
      limiter_(config.trace_limit, config.window_ms, config.clock) {}

std::unique_ptr<RecordStore> RecordStore::Setup(const GroupPublicKey& gpk, const G1& vk_r, Rng& rng,
                                                std::unique_ptr<RecordStorage> storage,
                                                RecordStoreConfig config) {
  return std::make_unique<RecordStore>(BlsKeyPair::Generate(rng), gpk, vk_r, std::move(storage),
                                       std::move(config));
}

void RecordStore::SetGroupKey(const GroupPublicKey& gpk) {
  auto next = std::make_shared<const GroupPublicKey>(gpk);
  std::lock_guard lock(gpk_mu_);
  gpk_ = std::move(next);
}

GroupPublicKey RecordStore::group_key() const {
  std::lock_guard lock(gpk_mu_);
  return *gpk_;
}

ContributeStatus RecordStore::Contribute(Record submission) {
  std::shared_ptr<const GroupPublicKey> gpk;
  {
    std::lock_guard lock(gpk_mu_);
    gpk = gpk_;
  }
  if (!GroupVerify(*gpk, submission.SignedPayload(), submission.gsig)) {
    return ContributeStatus::kRejected;
  }
  submission.received_at_ms = clock_();
  storage_->Append(submission);
  return ContributeStatus::kAccepted;
}

RecordSet RecordStore::Retrieve(CarrierId carrier, const Digest& idx, const BlsSignature& sigma_r) {
  if (!BlsVerify(vk_r_, idx, sigma_r)) {
    Fail(ErrorCode::kUnauthenticated, "retrieval authorization does not verify");
  }
  if (!limiter_.TryAcquire(carrier)) {
    Fail(ErrorCode::kRateLimited, "record store lookup quota exhausted");
  }
  RecordSet out;
  out.idx = idx;
  for (auto& r : storage_->Lookup(idx)) {
    SignedRecord sr;
    sr.sigma_rs = BlsSign(keys_.sk, r.SignedPayload());
    sr.record = std::move(r);
    out.records.push_back(std::move(sr));
  }
  out.set_sig = BlsSign(keys_.sk, RecordSet::SetPayload(idx, out.records));
  return out;
}

}  // namespace jager
