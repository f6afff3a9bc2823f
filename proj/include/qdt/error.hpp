// Copyright 2026 The qdt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qdt {

/// Broad failure class. Maps onto the CLI exit codes (2 and 3).
enum class ErrorKind {
    validation, ///< bad input: shapes, ranges, malformed files
    numerical,  ///< an invariant failed to hold on valid input
};

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what,
                   ErrorKind kind = ErrorKind::validation)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Throws a validation Error with `message` unless `condition` holds.
inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw Error(message, ErrorKind::validation);
    }
}

} // namespace qdt
