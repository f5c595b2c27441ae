// Copyright 2026 The QSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSS_ERROR_HPP
#define QSS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qss {

enum class ErrorKind {
    InvalidDimension,
    InvalidState,
    InvalidArgument,
    ZeroProbabilityBranch,
    BudgetExceeded,
    EmptySiftedSet,
    InternalInconsistency,
};

std::string_view to_string(ErrorKind kind);

/// Exception type thrown by every module; `kind()` identifies the failure class.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) {
        fail(kind, message);
    }
}

}  // namespace qss

#endif  // QSS_ERROR_HPP
