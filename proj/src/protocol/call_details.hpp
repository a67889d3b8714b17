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

#ifndef JAGER_PROTOCOL_CALL_DETAILS_HPP_
#define JAGER_PROTOCOL_CALL_DETAILS_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "common/bytes.hpp"

namespace jager {

using CarrierId = uint64_t;

inline constexpr CarrierId kOriginSentinel = 0;
inline constexpr CarrierId kTermSentinel = std::numeric_limits<uint64_t>::max();

inline bool IsSentinel(CarrierId id) { return id == kOriginSentinel || id == kTermSentinel; }

// src/dst are 10-digit NANP numbers (NPA-NXX-XXXX); dashes are accepted on
// input and stripped. ts is milliseconds since the Unix epoch.
struct CallDetails {
  std::string src;
  std::string dst;
  uint64_t ts = 0;

  bool operator==(const CallDetails&) const = default;
};

// Returns the 10 digits of a phone number, or throws kMalformed.
std::string NormalizeNumber(std::string_view number);

// Fixed 28-byte label input: src digits || dst digits || ep (u64 BE).
inline constexpr size_t kCallDetailsBytes = 28;
Bytes EncodeCallDetails(const CallDetails& cd, uint64_t epoch);
// Inverse of EncodeCallDetails; ts is set to the start of the epoch.
std::pair<CallDetails, uint64_t> DecodeCallDetails(ByteView in);

inline uint64_t EpochOf(uint64_t ts_ms, uint64_t granularity_ms) { return ts_ms / granularity_ms; }

// All epochs touching [ts - t_max, ts + t_max], ascending.
std::vector<uint64_t> DeriveEpochs(uint64_t ts_ms, uint64_t t_max_ms, uint64_t granularity_ms);

struct Hop {
  CarrierId prev = kOriginSentinel;
  CarrierId cur = 0;
  CarrierId next = kTermSentinel;

  static constexpr size_t kBytes = 24;
  std::array<uint8_t, kBytes> Encode() const;
  static Hop Decode(ByteView in);

  auto operator<=>(const Hop&) const = default;
};

// One row of a carrier's call detail records.
struct Cdr {
  CallDetails call;
  Hop hop;

  bool operator==(const Cdr&) const = default;
};

inline constexpr const char* kCdrCsvHeader = "src,dst,ts,prev,cur,next";
std::string CdrToCsv(const Cdr& cdr);
Cdr CdrFromCsv(std::string_view line);
std::vector<Cdr> ReadCdrCsv(const std::string& path);
void WriteCdrCsv(const std::string& path, const std::vector<Cdr>& cdrs);

}  // namespace jager

#endif  // JAGER_PROTOCOL_CALL_DETAILS_HPP_
