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


#ifndef HMIMO_RNG_HPP
#define HMIMO_RNG_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace hmimo
{
    // Stream identifiers. Each random object of an experiment draws from its own stream so that
    // adding a model never perturbs another model's samples.
    namespace streams
    {
        inline constexpr std::uint64_t planewave = 1;
        inline constexpr std::uint64_t clarke = 2;
        inline constexpr std::uint64_t iid = 3;
        inline constexpr std::uint64_t iid_core = 4;
    }

    // Philox4x32-10 keyed by (seed, stream); the trial index occupies the upper 64 counter bits
    // and the draw index the lower 64. Every draw is a pure function of
    // (seed, stream, trial, draw index), so trials can run on any thread in any order.
    class CounterRng
    {
    public:
        CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

        std::array<std::uint32_t, 4> block(std::uint64_t index) const;
        void blocks(std::uint64_t first, std::size_t n, std::uint32_t *out) const;

        // Standard circularly-symmetric complex Gaussians CN(0, 1), one Philox block each:
        // out[i] uses block first + i.
        void complex_normals(std::uint64_t first, std::size_t n, std::complex<double> *out) const;

        std::array<std::uint32_t, 2> key() const { return key_; }
        std::uint64_t trial() const { return trial_; }

    private:
        std::array<std::uint32_t, 2> key_;
        std::uint64_t trial_;
    };

    // 53-bit uniforms from two 32-bit words: open01 in (0, 1], half_open in [0, 1).
    double uniform_open01(std::uint32_t lo, std::uint32_t hi);
    double uniform_half_open(std::uint32_t lo, std::uint32_t hi);

    // sqrt(-ln u1) exp(i 2 pi u2) from the four words of one block.
    std::complex<double> complex_normal_from_block(const std::array<std::uint32_t, 4> &w);

    // Sequential reader over one CounterRng, for rejection samplers whose draw count is not fixed.
    class RngStream
    {
    public:
        RngStream(const CounterRng &rng, std::uint64_t first_block = 0) : rng_(rng), next_(first_block) {}

        double uniform();        // (0, 1]
        double normal();         // N(0, 1)
        double gamma(double k);  // Gamma(k, 1), k > 0 (Marsaglia-Tsang)

        std::uint64_t position() const { return next_; }

    private:
        CounterRng rng_;
        std::uint64_t next_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

    std::uint64_t splitmix64(std::uint64_t x);
}

#endif
