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

#include "crypto/groupsig.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace jager::crypto {
namespace {

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  ByteView Take(size_t n) {
    if (pos_ + n > in_.size()) Fail(ErrorCode::kMalformed, "truncated encoding");
    ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  uint64_t U64() { return ReadU64(Take(8)); }
  uint32_t U32() {
    ByteView b = Take(4);
    return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) | (uint32_t{b[2]} << 8) | b[3];
  }
  G1 PointG1() { return G1::FromBytes(Take(G1::kBytes)); }
  G2 PointG2() { return G2::FromBytes(Take(G2::kBytes)); }
  Scalar Fr() { return Scalar::FromBytes(Take(Scalar::kBytes)); }
  bool Done() const { return pos_ == in_.size(); }

 private:
  ByteView in_;
  size_t pos_ = 0;
};

void AppendU32(Bytes& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

std::string Key(const G1& a) {
  auto b = a.ToBytes();
  return std::string(b.begin(), b.end());
}

Scalar Challenge(const GroupPublicKey& gpk, ByteView msg, const GroupSignature& sig,
                 const G1& r1, const G1& r2, const GT& r3, const G1& r4, const G1& r5) {
  Bytes buf;
  Append(buf, gpk.ToBytes());
  AppendU64(buf, msg.size());
  Append(buf, msg);
  for (const G1* p : {&sig.t1, &sig.t2, &sig.t3, &r1, &r2}) Append(buf, p->ToBytes());
  Append(buf, r3.ToBytes());
  Append(buf, r4.ToBytes());
  Append(buf, r5.ToBytes());
  return Scalar::Hash(tags::kGroupChallenge, buf);
}

// e(left, g2) * e(right, w)
GT TwoPairing(const GroupPublicKey& gpk, const G1& left, const G1& right) {
  const std::pair<G1, G2> terms[] = {{left, gpk.g2}, {right, gpk.w}};
  return PairingProduct(terms);
}

}  // namespace

// ------------------------------------------------------------ encodings

Bytes GroupPublicKey::ToBytes() const {
  Bytes out;
  out.reserve(kBytes);
  AppendU32(out, epoch);
  Append(out, g1.ToBytes());
  Append(out, g2.ToBytes());
  Append(out, h.ToBytes());
  Append(out, u.ToBytes());
  Append(out, v.ToBytes());
  Append(out, w.ToBytes());
  return out;
}

GroupPublicKey GroupPublicKey::FromBytes(ByteView in) {
  Reader r(in);
  GroupPublicKey gpk;
  gpk.epoch = r.U32();
  gpk.g1 = r.PointG1();
  gpk.g2 = r.PointG2();
  gpk.h = r.PointG1();
  gpk.u = r.PointG1();
  gpk.v = r.PointG1();
  gpk.w = r.PointG2();
  if (!r.Done()) Fail(ErrorCode::kMalformed, "trailing bytes in group public key");
  return gpk;
}

Bytes MemberKey::ToBytes() const {
  Bytes out;
  out.reserve(kBytes);
  AppendU64(out, id);
  AppendU32(out, epoch);
  Append(out, a.ToBytes());
  Append(out, x.ToBytes());
  return out;
}

MemberKey MemberKey::FromBytes(ByteView in) {
  Reader r(in);
  MemberKey key;
  key.id = r.U64();
  key.epoch = r.U32();
  key.a = r.PointG1();
  key.x = r.Fr();
  if (!r.Done()) Fail(ErrorCode::kMalformed, "trailing bytes in member key");
  return key;
}

Bytes GroupSignature::ToBytes() const {
  Bytes out;
  out.reserve(kBytes);
  for (const G1* p : {&t1, &t2, &t3}) Append(out, p->ToBytes());
  for (const Scalar* s : {&c, &s_alpha, &s_beta, &s_x, &s_delta1, &s_delta2}) {
    Append(out, s->ToBytes());
  }
  return out;
}

GroupSignature GroupSignature::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "group signature has wrong length");
  Reader r(in);
  GroupSignature sig;
  sig.t1 = r.PointG1();
  sig.t2 = r.PointG1();
  sig.t3 = r.PointG1();
  sig.c = r.Fr();
  sig.s_alpha = r.Fr();
  sig.s_beta = r.Fr();
  sig.s_x = r.Fr();
  sig.s_delta1 = r.Fr();
  sig.s_delta2 = r.Fr();
  return sig;
}

// ------------------------------------------------------- sign / verify

GroupSignature GroupSign(const GroupPublicKey& gpk, const MemberKey& key, ByteView msg,
                         Rng& rng) {
  const Scalar alpha = Scalar::Random(rng);
  const Scalar beta = Scalar::Random(rng);
  const Scalar delta1 = key.x * alpha;
  const Scalar delta2 = key.x * beta;

  GroupSignature sig;
  sig.t1 = gpk.u * alpha;
  sig.t2 = gpk.v * beta;
  sig.t3 = key.a + gpk.h * (alpha + beta);

  const Scalar r_alpha = Scalar::Random(rng);
  const Scalar r_beta = Scalar::Random(rng);
  const Scalar r_x = Scalar::Random(rng);
  const Scalar r_delta1 = Scalar::Random(rng);
  const Scalar r_delta2 = Scalar::Random(rng);

  const G1 r1 = gpk.u * r_alpha;
  const G1 r2 = gpk.v * r_beta;
  const GT r3 = TwoPairing(gpk, sig.t3 * r_x + gpk.h * -(r_delta1 + r_delta2),
                           gpk.h * -(r_alpha + r_beta));
  const G1 r4 = sig.t1 * r_x + gpk.u * -r_delta1;
  const G1 r5 = sig.t2 * r_x + gpk.v * -r_delta2;

  sig.c = Challenge(gpk, msg, sig, r1, r2, r3, r4, r5);
  sig.s_alpha = r_alpha + sig.c * alpha;
  sig.s_beta = r_beta + sig.c * beta;
  sig.s_x = r_x + sig.c * key.x;
  sig.s_delta1 = r_delta1 + sig.c * delta1;
  sig.s_delta2 = r_delta2 + sig.c * delta2;
  return sig;
}

bool GroupVerify(const GroupPublicKey& gpk, ByteView msg, const GroupSignature& sig) {
  for (const G1* t : {&sig.t1, &sig.t2, &sig.t3}) {
    if (t->IsIdentity() || !t->InSubgroup()) return false;
  }
  const Scalar& c = sig.c;
  const G1 r1 = gpk.u * sig.s_alpha - sig.t1 * c;
  const G1 r2 = gpk.v * sig.s_beta - sig.t2 * c;
  const GT r3 = TwoPairing(
      gpk, sig.t3 * sig.s_x + gpk.h * -(sig.s_delta1 + sig.s_delta2) + gpk.g1 * -c,
      gpk.h * -(sig.s_alpha + sig.s_beta) + sig.t3 * c);
  const G1 r4 = sig.t1 * sig.s_x - gpk.u * sig.s_delta1;
  const G1 r5 = sig.t2 * sig.s_x - gpk.v * sig.s_delta2;
  return Challenge(gpk, msg, sig, r1, r2, r3, r4, r5) == c;
}

bool GroupVerifyBytes(const GroupPublicKey& gpk, ByteView msg, ByteView sig) {
  try {
    return GroupVerify(gpk, msg, GroupSignature::FromBytes(sig));
  } catch (const Error&) {
    return false;
  }
}

// --------------------------------------------------------------- manager

GroupManager GroupManager::Generate(Rng& rng) {
  GroupManager gm;
  gm.gamma_ = Scalar::RandomNonZero(rng);
  gm.xi1_ = Scalar::RandomNonZero(rng);
  gm.xi2_ = Scalar::RandomNonZero(rng);
  gm.gpk_.epoch = 0;
  gm.gpk_.g1 = G1::Generator();
  gm.gpk_.g2 = G2::Generator();
  gm.gpk_.h = G1::Generator() * Scalar::RandomNonZero(rng);
  gm.gpk_.u = gm.gpk_.h * gm.xi1_.Inverse();
  gm.gpk_.v = gm.gpk_.h * gm.xi2_.Inverse();
  gm.gpk_.w = gm.gpk_.g2 * gm.gamma_;
  gm.history_.push_back(gm.gpk_);
  return gm;
}

G1 GroupManager::CredentialFor(const G1& g1, const Scalar& x) const {
  return g1 * (gamma_ + x).Inverse();
}

MemberKey GroupManager::Join(MemberId id) {
  if (members_.count(id) != 0) Fail(ErrorCode::kAlreadyExists, "member already enrolled");
  // x must avoid gamma + x == 0 and collisions with existing members.
  Scalar x;
  for (;;) {
    auto rng = Rng::System();
    x = Scalar::RandomNonZero(rng);
    if ((gamma_ + x).IsZero()) continue;
    bool clash = std::any_of(members_.begin(), members_.end(),
                             [&](const auto& m) { return m.second == x; });
    if (!clash) break;
  }
  members_.emplace(id, x);
  for (const auto& past : history_) opening_index_[Key(CredentialFor(past.g1, x))] = id;
  return IssuedKey(id);
}

MemberKey GroupManager::IssuedKey(MemberId id) const {
  auto it = members_.find(id);
  if (it == members_.end() || revoked_.count(id) != 0) {
    Fail(ErrorCode::kNotFound, "not an active member");
  }
  return {id, gpk_.epoch, CredentialFor(gpk_.g1, it->second), it->second};
}

void GroupManager::Revoke(MemberId id) {
  auto it = members_.find(id);
  if (it == members_.end() || revoked_.count(id) != 0) {
    Fail(ErrorCode::kNotFound, "not an active member");
  }
  const Scalar inv = (gamma_ + it->second).Inverse();
  gpk_.g1 = gpk_.g1 * inv;
  gpk_.g2 = gpk_.g2 * inv;
  gpk_.w = gpk_.g2 * gamma_;
  gpk_.epoch += 1;
  revoked_.insert(id);
  history_.push_back(gpk_);
  IndexEpoch(gpk_.g1);
}

void GroupManager::IndexEpoch(const G1& g1) {
  for (const auto& [id, x] : members_) {
    if (revoked_.count(id) != 0) continue;
    opening_index_[Key(CredentialFor(g1, x))] = id;
  }
}

MemberId GroupManager::Open(const GroupSignature& sig) const {
  const G1 a = sig.t3 - (sig.t1 * xi1_ + sig.t2 * xi2_);
  auto it = opening_index_.find(Key(a));
  if (it == opening_index_.end()) Fail(ErrorCode::kNotFound, "cannot open signature");
  return it->second;
}

bool GroupManager::VerifyAnyEpoch(ByteView msg, const GroupSignature& sig) const {
  for (auto it = history_.rbegin(); it != history_.rend(); ++it) {
    if (GroupVerify(*it, msg, sig)) return true;
  }
  return false;
}

bool GroupManager::IsMember(MemberId id) const {
  return members_.count(id) != 0 && revoked_.count(id) == 0;
}

std::vector<MemberId> GroupManager::Members() const {
  std::vector<MemberId> out;
  for (const auto& [id, x] : members_) {
    if (revoked_.count(id) == 0) out.push_back(id);
  }
  return out;
}

Bytes GroupManager::ToBytes() const {
  Bytes out;
  Append(out, gamma_.ToBytes());
  Append(out, xi1_.ToBytes());
  Append(out, xi2_.ToBytes());
  AppendU32(out, static_cast<uint32_t>(history_.size()));
  for (const auto& past : history_) Append(out, past.ToBytes());
  AppendU32(out, static_cast<uint32_t>(members_.size()));
  for (const auto& [id, x] : members_) {
    AppendU64(out, id);
    Append(out, x.ToBytes());
    out.push_back(revoked_.count(id) != 0 ? 1 : 0);
  }
  return out;
}

GroupManager GroupManager::FromBytes(ByteView in) {
  Reader r(in);
  GroupManager gm;
  gm.gamma_ = r.Fr();
  gm.xi1_ = r.Fr();
  gm.xi2_ = r.Fr();
  const uint32_t epochs = r.U32();
  for (uint32_t i = 0; i < epochs; ++i) {
    gm.history_.push_back(GroupPublicKey::FromBytes(r.Take(GroupPublicKey::kBytes)));
  }
  const uint32_t count = r.U32();
  for (uint32_t i = 0; i < count; ++i) {
    const MemberId id = r.U64();
    const Scalar x = r.Fr();
    const uint8_t revoked = r.Take(1)[0];
    gm.members_.emplace(id, x);
    if (revoked != 0) gm.revoked_.insert(id);
  }
  if (!r.Done()) Fail(ErrorCode::kMalformed, "trailing bytes in group manager state");
  if (gm.history_.empty()) Fail(ErrorCode::kMalformed, "group manager has no epochs");
  gm.gpk_ = gm.history_.back();
  // Rebuild the opening index: every member credential under every base.
  for (const auto& past : gm.history_) {
    for (const auto& [id, x] : gm.members_) {
      gm.opening_index_[Key(gm.CredentialFor(past.g1, x))] = id;
    }
  }
  return gm;
}

}  // namespace jager::crypto
