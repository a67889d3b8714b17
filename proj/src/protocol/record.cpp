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

#include "protocol/record.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace jager {

using crypto::BlsVerify;

Bytes Record::SignedPayload() const {
  Bytes out = ct1.ToBytes();
  Append(out, ct2);
  Append(out, idx);
  return out;
}

Bytes Record::ToBytes() const {
  Bytes out;
  out.reserve(kBytes);
  Append(out, idx);
  Append(out, ct1.ToBytes());
  Append(out, ct2);
  Append(out, gsig.ToBytes());
  AppendU64(out, received_at_ms);
  return out;
}

Record Record::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "record has wrong length");
  Record r;
  size_t off = 0;
  std::copy_n(in.begin(), 32, r.idx.begin());
  off += 32;
  r.ct1 = crypto::WesCiphertext::FromBytes(in.subspan(off, crypto::WesCiphertext::kBytes));
  off += crypto::WesCiphertext::kBytes;
  std::copy_n(in.begin() + off, Hop::kBytes, r.ct2.begin());
  off += Hop::kBytes;
  r.gsig = crypto::GroupSignature::FromBytes(in.subspan(off, crypto::GroupSignature::kBytes));
  off += crypto::GroupSignature::kBytes;
  r.received_at_ms = ReadU64(in.subspan(off));
  return r;
}

Bytes RecordSet::SetPayload(const Digest& idx, const std::vector<SignedRecord>& records) {
  Bytes out;
  Append(out, idx);
  AppendU64(out, records.size());
  for (const auto& r : records) {
    Append(out, crypto::HashToDigest(crypto::tags::kRecordSet, r.record.SignedPayload()));
  }
  return out;
}

bool RecordSet::Verify(const crypto::G1& vk_rs) const {
  if (!BlsVerify(vk_rs, SetPayload(idx, records), set_sig)) return false;
  return std::all_of(records.begin(), records.end(), [&](const SignedRecord& r) {
    return r.record.idx == idx && BlsVerify(vk_rs, r.record.SignedPayload(), r.sigma_rs);
  });
}

Digest IndexForLabel(const Digest& label) { return crypto::HashToDigest(crypto::tags::kIndex, label); }

namespace {

HopCiphertext HopMask(ByteView call_encoding, const crypto::WesMessage& key) {
  Bytes input(call_encoding.begin(), call_encoding.end());
  Append(input, key);
  const Bytes mask = crypto::ExpandMessage(crypto::tags::kH3, input, Hop::kBytes);
  HopCiphertext out;
  std::copy(mask.begin(), mask.end(), out.begin());
  return out;
}

}  // namespace

HopCiphertext MaskHop(ByteView call_encoding, const crypto::WesMessage& key, const Hop& hop) {
  HopCiphertext out = HopMask(call_encoding, key);
  const auto plain = hop.Encode();
  for (size_t i = 0; i < out.size(); ++i) out[i] ^= plain[i];
  return out;
}

Hop UnmaskHop(ByteView call_encoding, const crypto::WesMessage& key, const HopCiphertext& ct2) {
  HopCiphertext plain = HopMask(call_encoding, key);
  for (size_t i = 0; i < plain.size(); ++i) plain[i] ^= ct2[i];
  return Hop::Decode(plain);
}

}  // namespace jager
