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

#include "common/bytes.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "common/error.hpp"

namespace jager {

std::string ToHex(ByteView in) {
  std::string out(in.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), in.data(), in.size());
  out.pop_back();
  return out;
}

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) Fail(ErrorCode::kMalformed, "hex string has odd length");
  Bytes out(hex.size() / 2);
  size_t written = 0;
  const char* end = nullptr;
  if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr,
                     &written, &end) != 0 ||
      written != out.size() || end != hex.data() + hex.size()) {
    Fail(ErrorCode::kMalformed, "invalid hex string");
  }
  return out;
}

std::string ToBase64(ByteView in) {
  constexpr int kVariant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_ENCODED_LEN(in.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), in.data(), in.size(), kVariant);
  out.resize(std::strlen(out.c_str()));
  return out;
}

Bytes FromBase64(std::string_view b64) {
  Bytes out(b64.size() / 4 * 3 + 3);
  size_t written = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), b64.data(), b64.size(), nullptr,
                        &written, &end, sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != b64.data() + b64.size()) {
    Fail(ErrorCode::kMalformed, "invalid base64 string");
  }
  out.resize(written);
  return out;
}

Digest DigestFromHex(std::string_view hex) {
  Bytes raw = FromHex(hex);
  if (raw.size() != 32) Fail(ErrorCode::kMalformed, "expected 32-byte hex value");
  Digest d;
  std::copy(raw.begin(), raw.end(), d.begin());
  return d;
}

bool EqualBytes(ByteView a, ByteView b) {
  return a.size() == b.size() && sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace jager
