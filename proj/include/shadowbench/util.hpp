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

#include <cstdint>
#include <cstdio>
#include <string>

namespace shadowbench {

/// FNV-1a 64-bit hash; used for file checksums and stream-id derivation.
inline std::uint64_t fnv1a64(const void *data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto *p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string &s) {
    return fnv1a64(s.data(), s.size());
}

/// Deterministic stream id for a named purpose and integer coordinates.
/// Dataset streams use the bare trial index (pinned by the file format);
/// every other consumer derives its id here so streams never collide.
inline std::uint64_t derive_stream(const char *purpose, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = fnv1a64(purpose, std::char_traits<char>::length(purpose));
    h = fnv1a64(&a, sizeof(a), h);
    h = fnv1a64(&b, sizeof(b), h);
    h = fnv1a64(&c, sizeof(c), h);
    return h;
}

/// Shortest decimal with full round-trip precision (17 significant digits).
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace shadowbench
