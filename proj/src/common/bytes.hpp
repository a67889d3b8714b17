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

#ifndef JAGER_COMMON_BYTES_HPP_
#define JAGER_COMMON_BYTES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jager {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;
using Digest = std::array<uint8_t, 32>;

inline ByteView AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline void Append(Bytes& out, ByteView in) {
  out.insert(out.end(), in.begin(), in.end());
}

inline void AppendU64(Bytes& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

inline uint64_t ReadU64(ByteView in) {
  uint64_t v = 0;
  for (size_t i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

std::string ToHex(ByteView in);
// Throws Error(kMalformed) on odd length or non-hex characters.
Bytes FromHex(std::string_view hex);

std::string ToBase64(ByteView in);
Bytes FromBase64(std::string_view b64);

// Parses a fixed-width hex string, e.g. a 32-byte index.
Digest DigestFromHex(std::string_view hex);

// Constant-time comparison for secrets and MAC-like values.
bool EqualBytes(ByteView a, ByteView b);

}  // namespace jager

#endif  // JAGER_COMMON_BYTES_HPP_
