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

#include "protocol/rate_limiter.hpp"

#include <chrono>

namespace jager {

Clock SystemClock() {
  return [] {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::system_clock::now().time_since_epoch())
                                     .count());
  };
}

RateLimiter::RateLimiter(uint64_t limit, uint64_t window_ms, Clock clock)
    : limit_(limit), window_ms_(window_ms), clock_(std::move(clock)) {}

void RateLimiter::Prune(std::deque<uint64_t>& times, uint64_t now) const {
  while (!times.empty() && times.front() + window_ms_ <= now) times.pop_front();
}

bool RateLimiter::TryAcquire(uint64_t key) {
  const uint64_t now = clock_();
  std::lock_guard lock(mu_);
  auto& times = grants_[key];
  Prune(times, now);
  if (times.size() >= limit_) return false;
  times.push_back(now);
  return true;
}

uint64_t RateLimiter::Count(uint64_t key) {
  const uint64_t now = clock_();
  std::lock_guard lock(mu_);
  auto it = grants_.find(key);
  if (it == grants_.end()) return 0;
  Prune(it->second, now);
  return it->second.size();
}

}  // namespace jager
