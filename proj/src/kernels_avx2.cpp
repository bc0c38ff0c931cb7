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

// Compiled with -mavx2 only; never called unless the dispatcher saw AVX2 in cpuid.

#include "hmimo/kernels.hpp"

#include <immintrin.h>

namespace hmimo::kernels::avx2
{
    void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y)
    {
        auto *xd = reinterpret_cast<const double *>(x);
        auto *yd = reinterpret_cast<double *>(y);
        const __m256d ar = _mm256_set1_pd(alpha.real());
        const __m256d ai = _mm256_set1_pd(alpha.imag());

        std::size_t i = 0;
        for (; i + 2 <= n; i += 2)
        {
            const __m256d xv = _mm256_loadu_pd(xd + 2 * i);              // xr0 xi0 xr1 xi1
            const __m256d xs = _mm256_permute_pd(xv, 0b0101);            // xi0 xr0 xi1 xr1
            const __m256d t1 = _mm256_mul_pd(ar, xv);                    // ar xr, ar xi
            const __m256d t2 = _mm256_mul_pd(ai, xs);                    // ai xi, ai xr
            const __m256d p = _mm256_addsub_pd(t1, t2);                  // ar xr - ai xi, ar xi + ai xr
            _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), p));
        }
        if (i < n)
            scalar::caxpy(n - i, alpha, x + i, y + i);
    }

    namespace
    {
        // Low and high halves of the 32x32->64 products of the 8 lanes of a and the constant m.
        inline void mulhilo(__m256i a, __m256i m, __m256i &hi, __m256i &lo)
        {
            const __m256i pe = _mm256_mul_epu32(a, m);                         // lanes 0 2 4 6
            const __m256i po = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);  // lanes 1 3 5 7
            lo = _mm256_blend_epi32(pe, _mm256_slli_epi64(po, 32), 0xAA);
            hi = _mm256_blend_epi32(_mm256_srli_epi64(pe, 32), po, 0xAA);
        }
    }

    void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                    std::uint32_t *out)
    {
        const std::uint64_t base = counter[0] | (static_cast<std::uint64_t>(counter[1]) << 32);
        const __m256i m0 = _mm256_set1_epi32(static_cast<int>(0xD2511F53u));
        const __m256i m1 = _mm256_set1_epi32(static_cast<int>(0xCD9E8D57u));

        std::size_t b = 0;
        alignas(32) std::uint32_t lo32[8], hi32[8], w[4][8];
        for (; b + 8 <= n; b += 8)
        {
            for (int j = 0; j < 8; ++j)
            {
                const std::uint64_t c = base + b + static_cast<std::uint64_t>(j);
                lo32[j] = static_cast<std::uint32_t>(c);
                hi32[j] = static_cast<std::uint32_t>(c >> 32);
            }
            __m256i c0 = _mm256_load_si256(reinterpret_cast<const __m256i *>(lo32));
            __m256i c1 = _mm256_load_si256(reinterpret_cast<const __m256i *>(hi32));
            __m256i c2 = _mm256_set1_epi32(static_cast<int>(counter[2]));
            __m256i c3 = _mm256_set1_epi32(static_cast<int>(counter[3]));
            std::uint32_t k0 = key[0], k1 = key[1];
            for (int r = 0; r < 10; ++r)
            {
                __m256i hi0, lo0, hi1, lo1;
                mulhilo(c0, m0, hi0, lo0);
                mulhilo(c2, m1, hi1, lo1);
                const __m256i kk0 = _mm256_set1_epi32(static_cast<int>(k0));
                const __m256i kk1 = _mm256_set1_epi32(static_cast<int>(k1));
                c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), kk0);
                c1 = lo1;
                c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), kk1);
                c3 = lo0;
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            _mm256_store_si256(reinterpret_cast<__m256i *>(w[0]), c0);
            _mm256_store_si256(reinterpret_cast<__m256i *>(w[1]), c1);
            _mm256_store_si256(reinterpret_cast<__m256i *>(w[2]), c2);
            _mm256_store_si256(reinterpret_cast<__m256i *>(w[3]), c3);
            for (int j = 0; j < 8; ++j)
                for (int q = 0; q < 4; ++q)
                    out[4 * (b + static_cast<std::size_t>(j)) + static_cast<std::size_t>(q)] = w[q][j];
        }
        if (b < n)
        {
            const std::uint64_t rest = base + b;
            scalar::philox4x32(key, {static_cast<std::uint32_t>(rest), static_cast<std::uint32_t>(rest >> 32), counter[2], counter[3]},
                               n - b, out + 4 * b);
        }
    }
}
