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

#include "crypto/pairing.hpp"

#include <blst_aux.h>

#include <algorithm>
#include <cstring>
#include <vector>

#include "common/error.hpp"

namespace jager::crypto {
namespace {

const uint8_t* TagPtr(std::string_view tag) {
  return reinterpret_cast<const uint8_t*>(tag.data());
}

}  // namespace

Bytes ExpandMessage(std::string_view tag, ByteView msg, size_t out_len) {
  if (out_len == 0 || out_len > 255 * 32) {
    Fail(ErrorCode::kInvalidArgument, "expand_message output length out of range");
  }
  Bytes out(out_len);
  blst_expand_message_xmd(out.data(), out.size(), msg.data(), msg.size(), TagPtr(tag),
                          tag.size());
  return out;
}

Digest HashToDigest(std::string_view tag, ByteView msg) {
  Digest d;
  blst_expand_message_xmd(d.data(), d.size(), msg.data(), msg.size(), TagPtr(tag),
                          tag.size());
  return d;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() { std::memset(&v_, 0, sizeof(v_)); }

Scalar Scalar::FromU64(uint64_t v) {
  uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar s;
  blst_fr_from_uint64(&s.v_, limbs);
  return s;
}

Scalar Scalar::Random(Rng& rng) {
  // 64 uniform bytes reduced mod q; bias is below 2^-256.
  uint8_t buf[64];
  rng.Fill(buf);
  blst_scalar tmp;
  blst_scalar_from_be_bytes(&tmp, buf, sizeof(buf));
  Scalar s;
  blst_fr_from_scalar(&s.v_, &tmp);
  return s;
}

Scalar Scalar::RandomNonZero(Rng& rng) {
  for (;;) {
    Scalar s = Random(rng);
    if (!s.IsZero()) return s;
  }
}

Scalar Scalar::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "scalar must be 32 bytes");
  blst_scalar tmp;
  blst_scalar_from_bendian(&tmp, in.data());
  if (!blst_scalar_fr_check(&tmp)) {
    bool all_zero = std::all_of(in.begin(), in.end(), [](uint8_t b) { return b == 0; });
    if (!all_zero) Fail(ErrorCode::kMalformed, "scalar out of range");
  }
  Scalar s;
  blst_fr_from_scalar(&s.v_, &tmp);
  return s;
}

Scalar Scalar::Hash(std::string_view tag, ByteView msg) {
  Bytes wide = ExpandMessage(tag, msg, 48);
  blst_scalar tmp;
  blst_scalar_from_be_bytes(&tmp, wide.data(), wide.size());
  Scalar s;
  blst_fr_from_scalar(&s.v_, &tmp);
  return s;
}

std::array<uint8_t, Scalar::kBytes> Scalar::ToBytes() const {
  blst_scalar tmp;
  blst_scalar_from_fr(&tmp, &v_);
  std::array<uint8_t, kBytes> out;
  blst_bendian_from_scalar(out.data(), &tmp);
  return out;
}

blst_scalar Scalar::ToBlst() const {
  blst_scalar tmp;
  blst_scalar_from_fr(&tmp, &v_);
  return tmp;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  blst_fr_add(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  blst_fr_sub(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  blst_fr_mul(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  blst_fr_cneg(&r.v_, &v_, true);
  return r;
}

Scalar Scalar::Inverse() const {
  if (IsZero()) Fail(ErrorCode::kInvalidArgument, "inverse of zero scalar");
  Scalar r;
  blst_fr_inverse(&r.v_, &v_);
  return r;
}

bool Scalar::IsZero() const {
  static const blst_fr kZero{};
  return std::memcmp(&v_, &kZero, sizeof(v_)) == 0;
}

bool Scalar::operator==(const Scalar& o) const {
  return std::memcmp(&v_, &o.v_, sizeof(v_)) == 0;
}

// -------------------------------------------------------------------- G1

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

G1 G1::Generator() { return G1(*blst_p1_generator()); }

G1 G1::Hash(std::string_view tag, ByteView msg) {
  G1 r;
  blst_hash_to_g1(&r.p_, msg.data(), msg.size(), TagPtr(tag), tag.size(), nullptr, 0);
  return r;
}

G1 G1::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "G1 element must be 48 bytes");
  blst_p1_affine a;
  if (blst_p1_uncompress(&a, in.data()) != BLST_SUCCESS) {
    Fail(ErrorCode::kMalformed, "invalid G1 encoding");
  }
  if (!blst_p1_affine_in_g1(&a)) Fail(ErrorCode::kMalformed, "G1 point not in subgroup");
  G1 r;
  blst_p1_from_affine(&r.p_, &a);
  return r;
}

std::array<uint8_t, G1::kBytes> G1::ToBytes() const {
  std::array<uint8_t, kBytes> out;
  blst_p1_compress(out.data(), &p_);
  return out;
}

blst_p1_affine G1::ToAffine() const {
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p_);
  return a;
}

G1 G1::operator*(const Scalar& s) const {
  blst_scalar k = s.ToBlst();
  G1 r;
  blst_p1_mult(&r.p_, &p_, k.b, 255);
  return r;
}

G1 G1::operator+(const G1& o) const {
  G1 r;
  blst_p1_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G1 G1::operator-(const G1& o) const { return *this + (-o); }

G1 G1::operator-() const {
  G1 r = *this;
  blst_p1_cneg(&r.p_, true);
  return r;
}

bool G1::IsIdentity() const { return blst_p1_is_inf(&p_); }
bool G1::InSubgroup() const { return blst_p1_in_g1(&p_); }
bool G1::operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

// -------------------------------------------------------------------- G2

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

G2 G2::Generator() { return G2(*blst_p2_generator()); }

G2 G2::Hash(std::string_view tag, ByteView msg) {
  G2 r;
  blst_hash_to_g2(&r.p_, msg.data(), msg.size(), TagPtr(tag), tag.size(), nullptr, 0);
  return r;
}

G2 G2::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "G2 element must be 96 bytes");
  blst_p2_affine a;
  if (blst_p2_uncompress(&a, in.data()) != BLST_SUCCESS) {
    Fail(ErrorCode::kMalformed, "invalid G2 encoding");
  }
  if (!blst_p2_affine_in_g2(&a)) Fail(ErrorCode::kMalformed, "G2 point not in subgroup");
  G2 r;
  blst_p2_from_affine(&r.p_, &a);
  return r;
}

std::array<uint8_t, G2::kBytes> G2::ToBytes() const {
  std::array<uint8_t, kBytes> out;
  blst_p2_compress(out.data(), &p_);
  return out;
}

blst_p2_affine G2::ToAffine() const {
  blst_p2_affine a;
  blst_p2_to_affine(&a, &p_);
  return a;
}

G2 G2::operator*(const Scalar& s) const {
  blst_scalar k = s.ToBlst();
  G2 r;
  blst_p2_mult(&r.p_, &p_, k.b, 255);
  return r;
}

G2 G2::operator+(const G2& o) const {
  G2 r;
  blst_p2_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G2 G2::operator-(const G2& o) const { return *this + (-o); }

G2 G2::operator-() const {
  G2 r = *this;
  blst_p2_cneg(&r.p_, true);
  return r;
}

bool G2::IsIdentity() const { return blst_p2_is_inf(&p_); }
bool G2::InSubgroup() const { return blst_p2_in_g2(&p_); }
bool G2::operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

// -------------------------------------------------------------------- GT

GT::GT() : f_(*blst_fp12_one()) {}

const GT& GT::Generator() {
  static const GT kGenerator = Pairing(G1::Generator(), G2::Generator());
  return kGenerator;
}

GT GT::FromBytes(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "GT element must be 576 bytes");
  blst_fp12 f;
  const uint8_t* p = in.data();
  // Mirrors blst_bendian_from_fp12.
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 2; ++j) {
      blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[0], p);
      p += 48;
      blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[1], p);
      p += 48;
    }
  }
  GT r(f);
  auto round_trip = r.ToBytes();
  if (!std::equal(round_trip.begin(), round_trip.end(), in.begin())) {
    Fail(ErrorCode::kMalformed, "non-canonical GT encoding");
  }
  if (!blst_fp12_in_group(&f)) Fail(ErrorCode::kMalformed, "GT element not in subgroup");
  return r;
}

std::array<uint8_t, GT::kBytes> GT::ToBytes() const {
  std::array<uint8_t, kBytes> out;
  blst_bendian_from_fp12(out.data(), &f_);
  return out;
}

GT GT::operator*(const GT& o) const {
  GT r;
  blst_fp12_mul(&r.f_, &f_, &o.f_);
  return r;
}

GT GT::Inverse() const {
  // Elements of the order-q subgroup are unitary: the inverse is the conjugate.
  GT r = *this;
  blst_fp12_conjugate(&r.f_);
  return r;
}

GT GT::Pow(const Scalar& e) const {
  blst_scalar k = e.ToBlst();
  GT acc;
  for (int bit = 255; bit >= 0; --bit) {
    blst_fp12_cyclotomic_sqr(&acc.f_, &acc.f_);
    if ((k.b[bit / 8] >> (bit % 8)) & 1) blst_fp12_mul(&acc.f_, &acc.f_, &f_);
  }
  return acc;
}

bool GT::IsOne() const { return blst_fp12_is_one(&f_); }
bool GT::operator==(const GT& o) const { return blst_fp12_is_equal(&f_, &o.f_); }

GT Pairing(const G1& a, const G2& b) {
  std::pair<G1, G2> term{a, b};
  return PairingProduct(std::span(&term, 1));
}

GT PairingProduct(std::span<const std::pair<G1, G2>> terms) {
  std::vector<blst_p1_affine> ps;
  std::vector<blst_p2_affine> qs;
  ps.reserve(terms.size());
  qs.reserve(terms.size());
  for (const auto& [p, q] : terms) {
    // Identity factors contribute one; blst's Miller loop does not accept them.
    if (p.IsIdentity() || q.IsIdentity()) continue;
    ps.push_back(p.ToAffine());
    qs.push_back(q.ToAffine());
  }
  if (ps.empty()) return GT::One();
  std::vector<const blst_p1_affine*> pptr;
  std::vector<const blst_p2_affine*> qptr;
  for (size_t i = 0; i < ps.size(); ++i) {
    pptr.push_back(&ps[i]);
    qptr.push_back(&qs[i]);
  }
  blst_fp12 f;
  blst_miller_loop_n(&f, qptr.data(), pptr.data(), ps.size());
  blst_final_exp(&f, &f);
  return GT(f);
}

// ------------------------------------------------------------------- BLS

BlsKeyPair BlsKeyPair::Generate(Rng& rng) { return FromSecret(Scalar::RandomNonZero(rng)); }

BlsKeyPair BlsKeyPair::FromSecret(const Scalar& sk) { return {sk, G1::Generator() * sk}; }

BlsSignature BlsSign(const Scalar& sk, ByteView msg) {
  return {G2::Hash(tags::kHBeta, msg) * sk};
}

bool BlsVerify(const G1& vk, ByteView msg, const BlsSignature& sig) {
  if (vk.IsIdentity() || sig.point.IsIdentity()) return false;
  if (!vk.InSubgroup() || !sig.point.InSubgroup()) return false;
  const std::pair<G1, G2> terms[] = {
      {vk, G2::Hash(tags::kHBeta, msg)},
      {-G1::Generator(), sig.point},
  };
  return PairingProduct(terms).IsOne();
}

bool BlsVerifyBytes(ByteView vk, ByteView msg, ByteView sig) {
  try {
    return BlsVerify(G1::FromBytes(vk), msg, BlsSignature::FromBytes(sig));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace jager::crypto
