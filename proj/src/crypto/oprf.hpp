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

// Verifiable 2HashDH oblivious PRF over BLS12-381.
//
// The input hash H_1 maps into G1 and the server key is published in G2, so
// the client's correctness check is e(H_1(x), pk) == e(c, g2).

#ifndef JAGER_CRYPTO_OPRF_HPP_
#define JAGER_CRYPTO_OPRF_HPP_

#include "crypto/pairing.hpp"

namespace jager::crypto {

using CallLabel = Digest;

struct OprfServerKey {
  Scalar k;
  G2 pk;  // g2^k

  static OprfServerKey Generate(Rng& rng);
  static OprfServerKey FromSecret(const Scalar& k);
};

// Single use: holds the blinding exponent for one evaluation.
struct BlindingState {
  Scalar r;
  Bytes input;
};

struct BlindedRequest {
  G1 blinded;
  BlindingState state;
};

BlindedRequest Blind(ByteView input, Rng& rng);
// Fixed blinding exponent; r must be non-zero.
BlindedRequest BlindWith(ByteView input, const Scalar& r);

// Server step. Rejects the identity and points outside the subgroup.
G1 Evaluate(const OprfServerKey& key, const G1& blinded);

// Unblinds, checks the pairing equation and derives the label. Throws
// Error(kVerificationFailed) when the server's answer is inconsistent with pk.
CallLabel Finalize(const G2& pk, const BlindingState& state, const G1& evaluated);

// The unblinded PRF, H_2(pk, x, H_1(x)^k); the server can compute it directly.
CallLabel DirectPrf(const OprfServerKey& key, ByteView input);

// H_2 over (pk, input, unblinded output).
CallLabel LabelFromOutput(const G2& pk, ByteView input, const G1& output);

}  // namespace jager::crypto

#endif  // JAGER_CRYPTO_OPRF_HPP_
