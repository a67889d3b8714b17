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

#ifndef JAGER_COMMON_ERROR_HPP_
#define JAGER_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace jager {

// Error categories surfaced across module boundaries. The HTTP layer and
// the C API map these one-to-one onto status codes.
enum class ErrorCode {
  kInvalidArgument,
  kMalformed,
  kUnauthenticated,
  kPermissionDenied,
  kRateLimited,
  kVerificationFailed,
  kNotFound,
  kAlreadyExists,
  kIo,
  kUnavailable,
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);
// Inverse of ErrorCodeName; unknown names map to kInternal.
ErrorCode ErrorCodeFromName(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace jager

#endif  // JAGER_COMMON_ERROR_HPP_
