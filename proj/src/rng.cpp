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

#include "shadowbench/rng.hpp"

namespace shadowbench {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4> &ctr,
                       const std::array<std::uint32_t, 2> &key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        round_once(ctr, key);
    }
    return ctr;
}

void RngStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_id_),
        static_cast<std::uint32_t>(stream_id_ >> 32)};
    const auto out = philox4x32(ctr, key_);
    ++block_;
    // buffer_ is consumed back to front: out[0..1] first, then out[2..3].
    buffer_[1] = static_cast<std::uint64_t>(out[0]) |
                 (static_cast<std::uint64_t>(out[1]) << 32);
    buffer_[0] = static_cast<std::uint64_t>(out[2]) |
                 (static_cast<std::uint64_t>(out[3]) << 32);
    buffered_ = 2;
}

} // namespace shadowbench
