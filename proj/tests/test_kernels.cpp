// SPDX-License-Identifier: Apache-2.0
//
// hmimo - plane-wave channel modelling for holographic MIMO arrays
// Copyright (C) 2026 The hmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hmimo/kernels.hpp"

#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

using namespace hmimo::kernels;

namespace
{
    std::vector<cplx> random_vector(std::size_t n, unsigned seed)
    {
        std::mt19937_64 g(seed);
        std::normal_distribution<double> d;
        std::vector<cplx> v(n);
        for (auto &x : v)
            x = {d(g), d(g)};
        return v;
    }
}

TEST_CASE("philox4x32-10 known-answer vectors")
{
    std::uint32_t out[4];
    scalar::philox4x32({0, 0}, {0, 0, 0, 0}, 1, out);
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);

    scalar::philox4x32({0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, 1, out);
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);

    scalar::philox4x32({0xa4093822u, 0x299f31d0u}, {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, 1, out);
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("philox blocks advance the 64-bit counter with carry")
{
    std::uint32_t a[8], b[4];
    scalar::philox4x32({1, 2}, {0xffffffffu, 0, 7, 9}, 2, a);
    scalar::philox4x32({1, 2}, {0, 1, 7, 9}, 1, b);
    CHECK(std::memcmp(a + 4, b, sizeof b) == 0);
}

TEST_CASE("caxpy scalar reference")
{
    std::vector<cplx> x = {{1, 2}, {3, -1}}, y = {{0.5, 0.5}, {-1, 0}};
    scalar::caxpy(2, {2, 1}, x.data(), y.data());
    CHECK(y[0] == cplx(0.5 + 0.0, 0.5 + 5.0));
    CHECK(y[1] == cplx(-1 + 7.0, 0 + 1.0));
}

TEST_CASE("avx2 kernels are bit-identical to scalar")
{
    if (!backend_available(Backend::avx2))
    {
        MESSAGE("AVX2 not available on this machine; equivalence not exercised");
        return;
    }
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u})
    {
        const auto x = random_vector(n, 11 + static_cast<unsigned>(n));
        auto y1 = random_vector(n, 99), y2 = y1;
        const cplx alpha(0.3, -1.7);
        scalar::caxpy(n, alpha, x.data(), y1.data());
        avx2::caxpy(n, alpha, x.data(), y2.data());
        CHECK(std::memcmp(y1.data(), y2.data(), n * sizeof(cplx)) == 0);
    }
    for (std::size_t n : {1u, 7u, 8u, 9u, 100u, 1027u})
    {
        std::vector<std::uint32_t> a(4 * n), b(4 * n);
        const std::array<std::uint32_t, 4> ctr = {0xfffffff0u, 3u, 5u, 6u};
        scalar::philox4x32({0xdeadbeefu, 42u}, ctr, n, a.data());
        avx2::philox4x32({0xdeadbeefu, 42u}, ctr, n, b.data());
        CHECK(a == b);
    }
}

TEST_CASE("dispatcher follows set_backend")
{
    const Backend saved = active_backend();
    set_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    CHECK(std::string(backend_name(Backend::scalar)) == "scalar");
    std::uint32_t out[4];
    philox4x32({0, 0}, {0, 0, 0, 0}, 1, out);
    CHECK(out[0] == 0x6627e8d5u);
    if (backend_available(Backend::avx2))
    {
        set_backend(Backend::avx2);
        CHECK(active_backend() == Backend::avx2);
    }
    else
        CHECK_THROWS_AS(set_backend(Backend::avx2), std::invalid_argument);
    set_backend(saved);
}
