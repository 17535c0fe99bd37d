// Copyright 2026 The SPLICE Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace splice {

enum class ErrorCode {
  kInvalidInput = 1,
  kIo = 2,
  kFormat = 3,
  kEmptyArchive = 4,
};

/// Single exception type raised by the library; the code tells callers (and
/// the C API) which failure class occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidInput, message);
}

[[noreturn]] inline void throw_io(const std::string& message) {
  throw Error(ErrorCode::kIo, message);
}

[[noreturn]] inline void throw_format(const std::string& message) {
  throw Error(ErrorCode::kFormat, message);
}

}  // namespace splice
