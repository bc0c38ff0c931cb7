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

#include "hmimo/rng.hpp"
#include "hmimo/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <algorithm>

namespace hmimo
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) : trial_(trial)
    {
        const std::uint64_t k = splitmix64(seed ^ splitmix64(stream));
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    }

    std::array<std::uint32_t, 4> CounterRng::block(std::uint64_t index) const
    {
        std::array<std::uint32_t, 4> out;
        blocks(index, 1, out.data());
        return out;
    }

    void CounterRng::blocks(std::uint64_t first, std::size_t n, std::uint32_t *out) const
    {
        kernels::philox4x32(key_,
                            {static_cast<std::uint32_t>(first), static_cast<std::uint32_t>(first >> 32),
                             static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32)},
                            n, out);
    }

    double uniform_open01(std::uint32_t lo, std::uint32_t hi)
    {
        const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
        return static_cast<double>(v + 1) * 0x1.0p-53;
    }

    double uniform_half_open(std::uint32_t lo, std::uint32_t hi)
    {
        const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
        return static_cast<double>(v) * 0x1.0p-53;
    }

    std::complex<double> complex_normal_from_block(const std::array<std::uint32_t, 4> &w)
    {
        const double r = std::sqrt(-std::log(uniform_open01(w[0], w[1])));
        const double t = 2.0 * std::numbers::pi * uniform_half_open(w[2], w[3]);
        return {r * std::cos(t), r * std::sin(t)};
    }

    void CounterRng::complex_normals(std::uint64_t first, std::size_t n, std::complex<double> *out) const
    {
        constexpr std::size_t chunk = 256;
        std::uint32_t buf[4 * chunk];
        for (std::size_t done = 0; done < n; done += chunk)
        {
            const std::size_t m = std::min(chunk, n - done);
            blocks(first + done, m, buf);
            for (std::size_t i = 0; i < m; ++i)
                out[done + i] = complex_normal_from_block({buf[4 * i], buf[4 * i + 1], buf[4 * i + 2], buf[4 * i + 3]});
        }
    }

    double RngStream::uniform()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const auto w = rng_.block(next_++);
        spare_ = uniform_open01(w[2], w[3]);
        has_spare_ = true;
        return uniform_open01(w[0], w[1]);
    }

    double RngStream::normal()
    {
        // Real part of a CN(0, 1) sample, rescaled to unit variance.
        has_spare_ = false;
        return std::numbers::sqrt2 * complex_normal_from_block(rng_.block(next_++)).real();
    }

    double RngStream::gamma(double k)
    {
        if (!(k > 0.0))
            throw std::invalid_argument("gamma shape must be positive");
        if (k < 1.0)
        {
            // Gamma(k) = Gamma(k + 1) U^(1/k)
            const double g = gamma(k + 1.0);
            return g * std::pow(uniform(), 1.0 / k);
        }
        const double d = k - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;)
        {
            double x, v;
            do
            {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x)
                return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }
}
