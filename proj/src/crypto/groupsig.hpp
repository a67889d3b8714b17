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

// Short group signatures in the style of Boneh-Boyen-Shacham (BBS04).
//
// The manager holds the issuing secret gamma (w = g2^gamma) and the opening
// secrets xi1, xi2 (u = h^(1/xi1), v = h^(1/xi2)). A member credential is
// (A, x) with A = g1^(1/(gamma + x)). A signature is a linear encryption of
// A under (u, v, h) plus a Fiat-Shamir proof of knowledge of (A, x); the
// manager opens it by decrypting A and looking it up in the registry.
//
// Revocation follows the BBS04 key-update method: revoking (A*, x*) moves
// the public key to g1' = A*, g2' = g2^(1/(gamma + x*)), after which the
// revoked credential can no longer produce verifying signatures and the
// remaining members need re-issued keys.

#ifndef JAGER_CRYPTO_GROUPSIG_HPP_
#define JAGER_CRYPTO_GROUPSIG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crypto/pairing.hpp"

namespace jager::crypto {

using MemberId = uint64_t;

struct GroupPublicKey {
  uint32_t epoch = 0;
  G1 g1;
  G2 g2;
  G1 h;
  G1 u;
  G1 v;
  G2 w;

  static constexpr size_t kBytes = 4 + 4 * G1::kBytes + 2 * G2::kBytes;
  Bytes ToBytes() const;
  static GroupPublicKey FromBytes(ByteView in);
};

struct MemberKey {
  MemberId id = 0;
  uint32_t epoch = 0;
  G1 a;
  Scalar x;

  static constexpr size_t kBytes = 8 + 4 + G1::kBytes + Scalar::kBytes;
  Bytes ToBytes() const;
  static MemberKey FromBytes(ByteView in);
};

struct GroupSignature {
  G1 t1, t2, t3;
  Scalar c, s_alpha, s_beta, s_x, s_delta1, s_delta2;

  // Fixed layout, identical for every signer: T1 T2 T3 c s_a s_b s_x s_d1 s_d2.
  static constexpr size_t kBytes = 3 * G1::kBytes + 6 * Scalar::kBytes;
  Bytes ToBytes() const;
  static GroupSignature FromBytes(ByteView in);
};

GroupSignature GroupSign(const GroupPublicKey& gpk, const MemberKey& key, ByteView msg,
                         Rng& rng);
bool GroupVerify(const GroupPublicKey& gpk, ByteView msg, const GroupSignature& sig);
bool GroupVerifyBytes(const GroupPublicKey& gpk, ByteView msg, ByteView sig);

// Not internally synchronized; callers serialize Join/Revoke against
// concurrent Open.
class GroupManager {
 public:
  static GroupManager Generate(Rng& rng);

  const GroupPublicKey& public_key() const { return gpk_; }

  // Throws kAlreadyExists for an id that was ever enrolled.
  MemberKey Join(MemberId id);
  // Current credential for an active member (re-issued after a revocation).
  MemberKey IssuedKey(MemberId id) const;
  void Revoke(MemberId id);

  // Decrypts the signer credential and maps it to a member id. Does not
  // re-run verification; throws kNotFound ("cannot open") when the
  // decrypted credential belongs to nobody.
  MemberId Open(const GroupSignature& sig) const;

  // True if sig verifies under the public key of any epoch so far.
  bool VerifyAnyEpoch(ByteView msg, const GroupSignature& sig) const;

  bool IsMember(MemberId id) const;
  bool IsRevoked(MemberId id) const { return revoked_.count(id) != 0; }
  std::vector<MemberId> Members() const;
  size_t size() const { return members_.size() - revoked_.size(); }

  Bytes ToBytes() const;
  static GroupManager FromBytes(ByteView in);

 private:
  GroupManager() = default;
  G1 CredentialFor(const G1& g1, const Scalar& x) const;
  void IndexEpoch(const G1& g1);

  Scalar gamma_;
  Scalar xi1_;
  Scalar xi2_;
  GroupPublicKey gpk_;
  // Public key of every epoch, oldest first; used to open signatures made
  // before a revocation.
  std::vector<GroupPublicKey> history_;
  std::map<MemberId, Scalar> members_;
  std::set<MemberId> revoked_;
  std::unordered_map<std::string, MemberId> opening_index_;
};

}  // namespace jager::crypto

#endif  // JAGER_CRYPTO_GROUPSIG_HPP_
