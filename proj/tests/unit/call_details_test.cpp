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

#include "protocol/call_details.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <set>

#include "common/error.hpp"
#include "common/rng.hpp"

namespace jager {
namespace {

TEST(CallDetails, GoldenEncoding) {
  const CallDetails cd{"202-555-0100", "3125550199", 0};
  const Bytes enc = EncodeCallDetails(cd, 0x0102030405060708ull);
  EXPECT_EQ(ToHex(enc), "32303235353530313030" "33313235353530313939" "0102030405060708");
  EXPECT_EQ(enc.size(), kCallDetailsBytes);
}

TEST(CallDetails, RoundTrip) {
  const CallDetails cd{"2025550100", "3125550199", 0};
  const auto [back, ep] = DecodeCallDetails(EncodeCallDetails(cd, 1700000000));
  EXPECT_EQ(back, cd);
  EXPECT_EQ(ep, 1700000000u);
}

TEST(CallDetails, EncodingIsInjective) {
  auto rng = Rng::Seeded(50);
  std::set<Bytes> seen;
  auto digits = [&] {
    std::string s;
    for (int i = 0; i < 10; ++i) s.push_back(static_cast<char>('0' + rng.NextU64() % 10));
    return s;
  };
  for (int i = 0; i < 10000; ++i) {
    CallDetails cd{digits(), digits(), 0};
    seen.insert(EncodeCallDetails(cd, rng.NextU64() % 4));
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(CallDetails, RejectsMalformedNumbers) {
  EXPECT_THROW(EncodeCallDetails({"202555010", "3125550199", 0}, 0), Error);
  EXPECT_THROW(EncodeCallDetails({"20255501000", "3125550199", 0}, 0), Error);
  EXPECT_THROW(EncodeCallDetails({"202555010x", "3125550199", 0}, 0), Error);
  EXPECT_THROW(DecodeCallDetails(Bytes(27)), Error);
}

TEST(Epochs, TenSecondWindowGivesTwentyOneEpochs) {
  const auto eps = DeriveEpochs(1700000000000ull, 10000, 1000);
  ASSERT_EQ(eps.size(), 21u);
  EXPECT_EQ(eps.front(), 1699999990u);
  EXPECT_EQ(eps.back(), 1700000010u);
}

TEST(Epochs, ZeroWindowIsOneEpoch) {
  EXPECT_EQ(DeriveEpochs(1234567, 0, 1000), std::vector<uint64_t>{1234});
}

TEST(Epochs, StraddlingBoundaryIncludesBothSides) {
  auto rng = Rng::Seeded(51);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t g = 1 + rng.NextU64() % 2000;
    const uint64_t ts = 100000 + rng.NextU64() % 1000000;
    const uint64_t t_max = rng.NextU64() % 5000;
    const auto eps = DeriveEpochs(ts, t_max, g);
    EXPECT_EQ(eps.front(), (ts - t_max) / g);
    EXPECT_EQ(eps.back(), (ts + t_max) / g);
    for (size_t k = 1; k < eps.size(); ++k) EXPECT_EQ(eps[k], eps[k - 1] + 1);
  }
  const auto eps = DeriveEpochs(1500, 600, 1000);
  EXPECT_EQ(eps, (std::vector<uint64_t>{0, 1, 2}));
}

TEST(Epochs, EpochContainsTimestamp) {
  for (uint64_t ts : {0ull, 999ull, 1000ull, 1700000000123ull}) {
    const uint64_t ep = EpochOf(ts, 1000);
    EXPECT_LE(ep * 1000, ts);
    EXPECT_LT(ts, (ep + 1) * 1000);
  }
}

TEST(Hop, EncodesToTwentyFourBytes) {
  const Hop h{kOriginSentinel, 7, kTermSentinel};
  const auto enc = h.Encode();
  EXPECT_EQ(ToHex(enc), "0000000000000000" "0000000000000007" "ffffffffffffffff");
  EXPECT_EQ(Hop::Decode(enc), h);
}

TEST(Cdr, CsvRoundTrip) {
  const std::vector<Cdr> cdrs{{{"2025550100", "3125550199", 1700000000000}, {0, 3, 9}},
                              {{"2025550100", "3125550199", 1700000000120}, {3, 9, kTermSentinel}}};
  const std::string path = ::testing::TempDir() + "cdr_roundtrip.csv";
  WriteCdrCsv(path, cdrs);
  EXPECT_EQ(ReadCdrCsv(path), cdrs);
  std::remove(path.c_str());
  EXPECT_THROW(CdrFromCsv("1,2,3"), Error);
}

}  // namespace
}  // namespace jager
