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

#ifndef JAGER_PROTOCOL_RECORD_STORE_HPP_
#define JAGER_PROTOCOL_RECORD_STORE_HPP_

#include <memory>
#include <mutex>

#include "protocol/rate_limiter.hpp"
#include "protocol/record.hpp"
#include "protocol/storage.hpp"

namespace jager {

struct RecordStoreConfig {
  uint64_t trace_limit = 10000;
  uint64_t window_ms = kDayMs;
  Clock clock = SystemClock();
};

enum class ContributeStatus { kAccepted, kRejected };

class RecordStore {
 public:
  RecordStore(crypto::BlsKeyPair keys, crypto::GroupPublicKey gpk, crypto::G1 vk_r,
              std::unique_ptr<RecordStorage> storage, RecordStoreConfig config = {});

  static std::unique_ptr<RecordStore> Setup(const crypto::GroupPublicKey& gpk, const crypto::G1& vk_r,
                                            Rng& rng, std::unique_ptr<RecordStorage> storage,
                                            RecordStoreConfig config = {});

  // Stores the submission iff its group signature verifies over
  // ct1 || ct2 || idx; otherwise the store is left untouched.
  ContributeStatus Contribute(Record submission);

  // Throws kUnauthenticated when sigma_r does not sign idx under vk_R and
  // kRateLimited once the carrier exceeds its lookup quota.
  RecordSet Retrieve(CarrierId carrier, const Digest& idx, const crypto::BlsSignature& sigma_r);

  // Installs the group key announced after a membership change.
  void SetGroupKey(const crypto::GroupPublicKey& gpk);
  crypto::GroupPublicKey group_key() const;

  const crypto::G1& vk_rs() const { return keys_.vk; }
  const crypto::Scalar& sk_rs() const { return keys_.sk; }
  const crypto::G1& vk_r() const { return vk_r_; }
  const RecordStorage& storage() const { return *storage_; }

 private:
  crypto::BlsKeyPair keys_;
  crypto::G1 vk_r_;
  mutable std::mutex gpk_mu_;
  std::shared_ptr<const crypto::GroupPublicKey> gpk_;
  std::unique_ptr<RecordStorage> storage_;
  Clock clock_;
  RateLimiter limiter_;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_RECORD_STORE_HPP_
