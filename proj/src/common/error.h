// Copyright 2026 The amhs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMHS_COMMON_ERROR_H_
#define AMHS_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace amhs {

// Error categories shared by every module. The C API maps these one-to-one
// onto amhs_status values and the HTTP layer onto status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kConfig,
  kIo,
  kParse,
  kSchema,
  kConflict,
  kUnauthorized,
  kForbidden,
  kNotFound,
  kNumeric,
  kUnavailable,
  kInternal,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by source adapters when the upstream source cannot be reached.
// Callers may retry the same page later.
class RetriableError : public Error {
 public:
  explicit RetriableError(const std::string &message)
      : Error(ErrorCode::kUnavailable, message) {}
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace amhs

#endif  // AMHS_COMMON_ERROR_H_
