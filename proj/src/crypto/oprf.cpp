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

#include "crypto/oprf.hpp"

#include "common/error.hpp"

namespace jager::crypto {

OprfServerKey OprfServerKey::Generate(Rng& rng) {
  return FromSecret(Scalar::RandomNonZero(rng));
}

OprfServerKey OprfServerKey::FromSecret(const Scalar& k) {
  return {k, G2::Generator() * k};
}

BlindedRequest Blind(ByteView input, Rng& rng) {
  return BlindWith(input, Scalar::RandomNonZero(rng));
}

BlindedRequest BlindWith(ByteView input, const Scalar& r) {
  if (r.IsZero()) Fail(ErrorCode::kInvalidArgument, "blinding exponent must be non-zero");
  BlindedRequest req;
  req.blinded = G1::Hash(tags::kH1, input) * r;
  req.state.r = r;
  req.state.input.assign(input.begin(), input.end());
  return req;
}

G1 Evaluate(const OprfServerKey& key, const G1& blinded) {
  if (blinded.IsIdentity() || !blinded.InSubgroup()) {
    Fail(ErrorCode::kMalformed, "blinded element rejected");
  }
  return blinded * key.k;
}

CallLabel Finalize(const G2& pk, const BlindingState& state, const G1& evaluated) {
  const G1 c = evaluated * state.r.Inverse();
  const G1 h = G1::Hash(tags::kH1, state.input);
  const std::pair<G1, G2> terms[] = {{h, pk}, {-c, G2::Generator()}};
  if (c.IsIdentity() || !PairingProduct(terms).IsOne()) {
    Fail(ErrorCode::kVerificationFailed, "OPRF evaluation failed the pairing check");
  }
  return LabelFromOutput(pk, state.input, c);
}

CallLabel DirectPrf(const OprfServerKey& key, ByteView input) {
  return LabelFromOutput(key.pk, input, G1::Hash(tags::kH1, input) * key.k);
}

CallLabel LabelFromOutput(const G2& pk, ByteView input, const G1& output) {
  Bytes msg;
  Append(msg, pk.ToBytes());
  AppendU64(msg, input.size());
  Append(msg, input);
  Append(msg, output.ToBytes());
  return HashToDigest(tags::kH2, msg);
}

}  // namespace jager::crypto
