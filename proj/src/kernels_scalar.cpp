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

namespace hmimo::kernels::scalar
{
    void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y)
    {
        const double ar = alpha.real(), ai = alpha.imag();
        auto *xd = reinterpret_cast<const double *>(x);
        auto *yd = reinterpret_cast<double *>(y);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double xr = xd[2 * i], xi = xd[2 * i + 1];
            const double pr = ar * xr - ai * xi;
            const double pi = ar * xi + ai * xr;
            yd[2 * i] += pr;
            yd[2 * i + 1] += pi;
        }
    }

    namespace
    {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    }

    void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                    std::uint32_t *out)
    {
        const std::uint64_t base = counter[0] | (static_cast<std::uint64_t>(counter[1]) << 32);
        for (std::size_t b = 0; b < n; ++b)
        {
            const std::uint64_t c = base + b;
            std::uint32_t c0 = static_cast<std::uint32_t>(c), c1 = static_cast<std::uint32_t>(c >> 32);
            std::uint32_t c2 = counter[2], c3 = counter[3];
            std::uint32_t k0 = key[0], k1 = key[1];
            for (int r = 0; r < 10; ++r)
            {
                const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c0;
                const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c2;
                const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
                const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
                const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
                const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
                c0 = n0;
                c1 = n1;
                c2 = n2;
                c3 = n3;
                k0 += W0;
                k1 += W1;
            }
            out[4 * b] = c0;
            out[4 * b + 1] = c1;
            out[4 * b + 2] = c2;
            out[4 * b + 3] = c3;
        }
    }
}
