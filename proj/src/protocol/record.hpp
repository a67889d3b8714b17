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

#ifndef JAGER_PROTOCOL_RECORD_HPP_
#define JAGER_PROTOCOL_RECORD_HPP_

#include <array>
#include <vector>

#include "common/bytes.hpp"
#include "crypto/groupsig.hpp"
#include "crypto/wes.hpp"
#include "protocol/call_details.hpp"

namespace jager {

using HopCiphertext = std::array<uint8_t, Hop::kBytes>;

// One anonymous hop record as submitted to and stored by the record store.
struct Record {
  Digest idx{};
  crypto::WesCiphertext ct1;
  HopCiphertext ct2{};
  crypto::GroupSignature gsig;
  uint64_t received_at_ms = 0;

  // ct1 || ct2 || idx, the message covered by both gsig and sigma_rs.
  Bytes SignedPayload() const;

  // idx || ct1 || ct2 || gsig || received_at
  static constexpr size_t kBytes =
      32 + crypto::WesCiphertext::kBytes + Hop::kBytes + crypto::GroupSignature::kBytes + 8;
  Bytes ToBytes() const;
  static Record FromBytes(ByteView in);
};

struct SignedRecord {
  Record record;
  crypto::BlsSignature sigma_rs;
};

// Response to a retrieval. set_sig covers the index and the digests of all
// returned records, so an empty answer is authenticated too.
struct RecordSet {
  Digest idx{};
  std::vector<SignedRecord> records;
  crypto::BlsSignature set_sig;

  static Bytes SetPayload(const Digest& idx, const std::vector<SignedRecord>& records);
  // Checks set_sig and every sigma_rs, and that each record carries idx.
  bool Verify(const crypto::G1& vk_rs) const;
};

// idx = H(call-label)
Digest IndexForLabel(const Digest& label);

// ct2 = H_3(call_encoding || key)[0..24) XOR hop
HopCiphertext MaskHop(ByteView call_encoding, const crypto::WesMessage& key, const Hop& hop);
Hop UnmaskHop(ByteView call_encoding, const crypto::WesMessage& key, const HopCiphertext& ct2);

}  // namespace jager

#endif  // JAGER_PROTOCOL_RECORD_HPP_
