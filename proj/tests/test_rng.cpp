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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "shadowbench/rng.hpp"

using namespace shadowbench;

TEST_CASE("philox4x32-10 matches the reference known-answer vectors") {
    // Vectors from the Random123 distribution (kat_vectors, philox4x32 10).
    const auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    const auto ones = philox4x32(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
        {0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    const auto pi = philox4x32(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }

    RngStream reference(42, 7);
    RngStream other_stream(42, 8);
    RngStream other_seed(43, 7);
    int collisions_stream = 0;
    int collisions_seed = 0;
    for (int i = 0; i < 100; ++i) {
        const auto ref = reference.next_u64();
        collisions_stream += ref == other_stream.next_u64() ? 1 : 0;
        collisions_seed += ref == other_seed.next_u64() ? 1 : 0;
    }
    CHECK(collisions_stream == 0);
    CHECK(collisions_seed == 0);
}

TEST_CASE("uniform doubles live in [0,1) with the right mean") {
    RngStream rng(1, 0);
    std::vector<double> draws(100000);
    for (auto &x : draws) {
        x = rng.next_double();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
    const auto s = oracles::mean_se(draws);
    CHECK(std::abs(s.mean - 0.5) <= 3.0 * s.se);
}

TEST_CASE("complex normals have zero-mean unit-variance parts") {
    RngStream rng(2, 0);
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> re_sq;
    std::vector<double> im_sq;
    for (int i = 0; i < 100000; ++i) {
        const auto z = rng.next_complex_normal();
        re.push_back(z.real());
        im.push_back(z.imag());
        re_sq.push_back(z.real() * z.real());
        im_sq.push_back(z.imag() * z.imag());
    }
    const auto mr = oracles::mean_se(re);
    const auto mi = oracles::mean_se(im);
    const auto vr = oracles::mean_se(re_sq);
    const auto vi = oracles::mean_se(im_sq);
    CHECK(std::abs(mr.mean) <= 3.0 * mr.se);
    CHECK(std::abs(mi.mean) <= 3.0 * mi.se);
    CHECK(std::abs(vr.mean - 1.0) <= 3.0 * vr.se);
    CHECK(std::abs(vi.mean - 1.0) <= 3.0 * vi.se);
}

TEST_CASE("bounded draws stay in range") {
    RngStream rng(3, 0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(rng.next_below(17) < 17);
    }
}
