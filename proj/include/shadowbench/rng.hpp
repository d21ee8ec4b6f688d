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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace shadowbench {

/// One Philox-4x32 block: 10 rounds over a 128-bit counter with a 64-bit key.
/// Reference constants from Salmon et al., "Parallel random numbers: as easy
/// as 1, 2, 3" (SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// Streams are identified by (root_seed, stream_id): the seed is the Philox
/// key and the stream id occupies the upper 64 bits of the 128-bit counter,
/// so distinct stream ids index disjoint counter blocks of the same keyed
/// permutation. Draws from one stream are sequential; a stream must not be
/// shared between threads. Any (root_seed, stream_id) pair reproduces the
/// identical sequence.
class RngStream {
  public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(root_seed),
               static_cast<std::uint32_t>(root_seed >> 32)},
          stream_id_(stream_id) {}

    [[nodiscard]] std::uint64_t root_seed() const noexcept {
        return static_cast<std::uint64_t>(key_[0]) |
               (static_cast<std::uint64_t>(key_[1]) << 32);
    }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() {
        if (buffered_ == 0) {
            refill();
        }
        return buffer_[--buffered_];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Multiply-shift bounded draw (Lemire); bias < 2^-64, irrelevant here.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// One pair of independent N(0,1) draws via Box-Muller.
    std::array<double, 2> next_normal_pair() {
        const double u1 = 1.0 - next_double(); // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    /// Standard complex normal N(0,1) + i N(0,1); consumes exactly two u64.
    std::complex<double> next_complex_normal() {
        const auto p = next_normal_pair();
        return {p[0], p[1]};
    }

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

} // namespace shadowbench
