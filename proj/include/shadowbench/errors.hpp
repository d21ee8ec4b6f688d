// Copyright 2026 The shadowbench authors.

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

namespace shadowbench {

/// Error categories used across all modules.
enum class Errc {
    dimension_mismatch,
    invalid_argument,
    cap_exceeded,
    invariant_violation,
    io_failure,
    bad_format,
    config_conflict,
};

/// Exception carrying a machine-readable category alongside the message.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

inline const char *to_string(Errc code) noexcept {
    switch (code) {
    case Errc::dimension_mismatch:
        return "dimension_mismatch";
    case Errc::invalid_argument:
        return "invalid_argument";
    case Errc::cap_exceeded:
        return "cap_exceeded";
    case Errc::invariant_violation:
        return "invariant_violation";
    case Errc::io_failure:
        return "io_failure";
    case Errc::bad_format:
        return "bad_format";
    case Errc::config_conflict:
        return "config_conflict";
    }
    return "unknown";
}

} // namespace shadowbench
