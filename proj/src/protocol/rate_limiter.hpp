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

#ifndef JAGER_PROTOCOL_RATE_LIMITER_HPP_
#define JAGER_PROTOCOL_RATE_LIMITER_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

namespace jager {

// Milliseconds since the Unix epoch; injectable for tests.
using Clock = std::function<uint64_t()>;
Clock SystemClock();

inline constexpr uint64_t kDayMs = 24ull * 60 * 60 * 1000;

// Per-key rolling-window counter. Only successful acquisitions count
// against the limit.
class RateLimiter {
 public:
  RateLimiter(uint64_t limit, uint64_t window_ms, Clock clock);

  bool TryAcquire(uint64_t key);
  uint64_t Count(uint64_t key);
  uint64_t limit() const { return limit_; }

 private:
  void Prune(std::deque<uint64_t>& times, uint64_t now) const;

  const uint64_t limit_;
  const uint64_t window_ms_;
  Clock clock_;
  std::mutex mu_;
  std::unordered_map<uint64_t, std::deque<uint64_t>> grants_;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_RATE_LIMITER_HPP_
