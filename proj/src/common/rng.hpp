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

#ifndef JAGER_COMMON_RNG_HPP_
#define JAGER_COMMON_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>

namespace jager {

// Byte source for all key material and protocol randomness. The system
// variant draws from the OS CSPRNG; the seeded variant is a ChaCha20
// keystream and exists so tests and simulations are reproducible.
class Rng {
 public:
  static Rng System();
  static Rng Seeded(uint64_t seed);

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();

 private:
  Rng() = default;

  bool seeded_ = false;
  std::array<uint8_t, 32> key_{};
  uint64_t counter_ = 0;
};

// Must run before any crypto call; idempotent.
void InitCrypto();

}  // namespace jager

#endif  // JAGER_COMMON_RNG_HPP_
