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

#include <charconv>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace jager {

std::string NormalizeNumber(std::string_view number) {
  std::string digits;
  for (char c : number) {
    if (c == '-') continue;
    if (c < '0' || c > '9') Fail(ErrorCode::kMalformed, "phone number has non-digit characters");
    digits.push_back(c);
  }
  if (digits.size() != 10) Fail(ErrorCode::kMalformed, "phone number must have 10 digits");
  return digits;
}

Bytes EncodeCallDetails(const CallDetails& cd, uint64_t epoch) {
  Bytes out;
  out.reserve(kCallDetailsBytes);
  Append(out, AsBytes(NormalizeNumber(cd.src)));
  Append(out, AsBytes(NormalizeNumber(cd.dst)));
  AppendU64(out, epoch);
  return out;
}

std::pair<CallDetails, uint64_t> DecodeCallDetails(ByteView in) {
  if (in.size() != kCallDetailsBytes) Fail(ErrorCode::kMalformed, "call details have wrong length");
  CallDetails cd;
  cd.src = NormalizeNumber({reinterpret_cast<const char*>(in.data()), 10});
  cd.dst = NormalizeNumber({reinterpret_cast<const char*>(in.data()) + 10, 10});
  const uint64_t ep = ReadU64(in.subspan(20));
  return {cd, ep};
}

std::vector<uint64_t> DeriveEpochs(uint64_t ts_ms, uint64_t t_max_ms, uint64_t granularity_ms) {
  if (granularity_ms == 0) Fail(ErrorCode::kInvalidArgument, "epoch granularity must be positive");
  const uint64_t lo = ts_ms > t_max_ms ? ts_ms - t_max_ms : 0;
  const uint64_t hi = ts_ms + t_max_ms;
  std::vector<uint64_t> epochs;
  for (uint64_t ep = EpochOf(lo, granularity_ms); ep <= EpochOf(hi, granularity_ms); ++ep) {
    epochs.push_back(ep);
  }
  return epochs;
}

std::array<uint8_t, Hop::kBytes> Hop::Encode() const {
  Bytes tmp;
  AppendU64(tmp, prev);
  AppendU64(tmp, cur);
  AppendU64(tmp, next);
  std::array<uint8_t, kBytes> out;
  std::copy(tmp.begin(), tmp.end(), out.begin());
  return out;
}

Hop Hop::Decode(ByteView in) {
  if (in.size() != kBytes) Fail(ErrorCode::kMalformed, "hop has wrong length");
  return Hop{ReadU64(in), ReadU64(in.subspan(8)), ReadU64(in.subspan(16))};
}

namespace {

uint64_t ParseU64(std::string_view field) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    Fail(ErrorCode::kMalformed, "bad integer field in CDR row: " + std::string(field));
  }
  return v;
}

}  // namespace

std::string CdrToCsv(const Cdr& cdr) {
  std::ostringstream os;
  os << cdr.call.src << ',' << cdr.call.dst << ',' << cdr.call.ts << ',' << cdr.hop.prev << ','
     << cdr.hop.cur << ',' << cdr.hop.next;
  return os.str();
}

Cdr CdrFromCsv(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  std::vector<std::string_view> fields;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  if (fields.size() != 6) Fail(ErrorCode::kMalformed, "CDR row must have 6 fields");
  Cdr cdr;
  cdr.call.src = NormalizeNumber(fields[0]);
  cdr.call.dst = NormalizeNumber(fields[1]);
  cdr.call.ts = ParseU64(fields[2]);
  cdr.hop = Hop{ParseU64(fields[3]), ParseU64(fields[4]), ParseU64(fields[5])};
  return cdr;
}

std::vector<Cdr> ReadCdrCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  std::vector<Cdr> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("src,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    out.push_back(CdrFromCsv(line));
  }
  return out;
}

void WriteCdrCsv(const std::string& path, const std::vector<Cdr>& cdrs) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out << kCdrCsvHeader << '\n';
  for (const auto& cdr : cdrs) out << CdrToCsv(cdr) << '\n';
}

}  // namespace jager
