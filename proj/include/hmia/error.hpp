// Copyright 2026 The hmia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMIA_ERROR_HPP_
#define HMIA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmia {

enum class ErrorKind {
  kSchema,      // width or shape mismatch between vectors, datasets, models
  kDomain,      // argument outside an operation's domain
  kFormat,      // malformed file or document
  kExhausted,   // resampling budget spent without a valid draw
  kBudget,      // enumeration too large
  kDiverged,    // non-finite training loss
  kValidation,  // configuration field rejected
  kPath,        // missing input artifact
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kExhausted: return "exhaustion error";
    case ErrorKind::kBudget: return "budget error";
    case ErrorKind::kDiverged: return "training diverged";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kPath: return "path error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace hmia

#endif  // HMIA_ERROR_HPP_
