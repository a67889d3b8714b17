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

// BLS12-381 group arithmetic, domain-separated hashing and plain BLS
// signatures. Verification keys live in G1, signatures and the H_beta
// message hash in G2.

#ifndef JAGER_CRYPTO_PAIRING_HPP_
#define JAGER_CRYPTO_PAIRING_HPP_

#include <blst.h>

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

#include "common/bytes.hpp"
#include "common/rng.hpp"

namespace jager::crypto {

// Domain separation tags, one per logical hash. These strings are part of
// the wire format: changing any of them invalidates every stored record.
namespace tags {
inline constexpr std::string_view kH1 = "JAGER-H1";
inline constexpr std::string_view kH2 = "JAGER-H2";
inline constexpr std::string_view kH3 = "JAGER-H3";
inline constexpr std::string_view kHAlpha = "JAGER-HA";
inline constexpr std::string_view kHBeta = "JAGER-HB";
inline constexpr std::string_view kIndex = "JAGER-IDX";
// Internal to the group signature and record-store response signing.
inline constexpr std::string_view kGroupChallenge = "JAGER-GS-CHAL";
inline constexpr std::string_view kRecordSet = "JAGER-RS-SET";
}  // namespace tags

// expand_message_xmd (SHA-256) under `tag`; out_len <= 8160.
Bytes ExpandMessage(std::string_view tag, ByteView msg, size_t out_len);
Digest HashToDigest(std::string_view tag, ByteView msg);

class Scalar {
 public:
  static constexpr size_t kBytes = 32;

  Scalar();
  static Scalar FromU64(uint64_t v);
  static Scalar Random(Rng& rng);
  static Scalar RandomNonZero(Rng& rng);
  // 32-byte big-endian, rejected unless < q.
  static Scalar FromBytes(ByteView in);
  static Scalar Hash(std::string_view tag, ByteView msg);

  std::array<uint8_t, kBytes> ToBytes() const;
  // Little-endian form consumed by the point multiplication routines.
  blst_scalar ToBlst() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar Inverse() const;
  bool IsZero() const;
  bool operator==(const Scalar& o) const;

 private:
  blst_fr v_;
};

class G1 {
 public:
  static constexpr size_t kBytes = 48;

  G1();  // identity
  explicit G1(const blst_p1& p) : p_(p) {}
  static G1 Generator();
  static G1 Hash(std::string_view tag, ByteView msg);
  // Compressed encoding; rejects off-curve and non-subgroup points.
  static G1 FromBytes(ByteView in);

  std::array<uint8_t, kBytes> ToBytes() const;
  blst_p1_affine ToAffine() const;
  const blst_p1& raw() const { return p_; }

  G1 operator*(const Scalar& s) const;
  G1 operator+(const G1& o) const;
  G1 operator-(const G1& o) const;
  G1 operator-() const;
  bool IsIdentity() const;
  bool InSubgroup() const;
  bool operator==(const G1& o) const;

 private:
  blst_p1 p_;
};

class G2 {
 public:
  static constexpr size_t kBytes = 96;

  G2();  // identity
  explicit G2(const blst_p2& p) : p_(p) {}
  static G2 Generator();
  static G2 Hash(std::string_view tag, ByteView msg);
  static G2 FromBytes(ByteView in);

  std::array<uint8_t, kBytes> ToBytes() const;
  blst_p2_affine ToAffine() const;
  const blst_p2& raw() const { return p_; }

  G2 operator*(const Scalar& s) const;
  G2 operator+(const G2& o) const;
  G2 operator-(const G2& o) const;
  G2 operator-() const;
  bool IsIdentity() const;
  bool InSubgroup() const;
  bool operator==(const G2& o) const;

 private:
  blst_p2 p_;
};

class GT {
 public:
  // Twelve big-endian Fp coordinates in blst's canonical tower order.
  static constexpr size_t kBytes = 576;

  GT();  // one
  explicit GT(const blst_fp12& f) : f_(f) {}
  static GT One() { return GT(); }
  // pairing(G1::Generator(), G2::Generator()); cached.
  static const GT& Generator();
  // Rejects non-canonical coordinates and elements outside the order-q subgroup.
  static GT FromBytes(ByteView in);

  std::array<uint8_t, kBytes> ToBytes() const;
  const blst_fp12& raw() const { return f_; }

  GT operator*(const GT& o) const;
  GT Inverse() const;
  GT Pow(const Scalar& e) const;
  bool IsOne() const;
  bool operator==(const GT& o) const;

 private:
  blst_fp12 f_;
};

GT Pairing(const G1& a, const G2& b);
// Product of pairings with a single final exponentiation.
GT PairingProduct(std::span<const std::pair<G1, G2>> terms);

struct BlsSignature {
  G2 point;

  static constexpr size_t kBytes = G2::kBytes;
  static BlsSignature FromBytes(ByteView in) { return {G2::FromBytes(in)}; }
  std::array<uint8_t, kBytes> ToBytes() const { return point.ToBytes(); }
  bool operator==(const BlsSignature& o) const { return point == o.point; }
};

struct BlsKeyPair {
  Scalar sk;
  G1 vk;

  static BlsKeyPair Generate(Rng& rng);
  static BlsKeyPair FromSecret(const Scalar& sk);
};

// H_beta(msg)^sk
BlsSignature BlsSign(const Scalar& sk, ByteView msg);
// Rejects identity keys and identity signatures.
bool BlsVerify(const G1& vk, ByteView msg, const BlsSignature& sig);
// Byte-level variant for untrusted input; malformed encodings verify false.
bool BlsVerifyBytes(ByteView vk, ByteView msg, ByteView sig);

}  // namespace jager::crypto

#endif  // JAGER_CRYPTO_PAIRING_HPP_
