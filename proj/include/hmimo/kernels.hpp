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

#ifndef HMIMO_KERNELS_HPP
#define HMIMO_KERNELS_HPP

// Data-parallel inner loops with a scalar reference and vectorized variants.
//
// Every variant performs the same floating-point operations in the same order per output
// element (no FMA contraction, no reassociation), so all backends are bit-identical. The
// active backend is picked once at startup from cpuid and can be overridden with
// HMIMO_KERNELS=scalar|avx2 or set_backend().

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace hmimo::kernels
{
    enum class Backend
    {
        scalar,
        avx2
    };

    const char *backend_name(Backend b);
    bool backend_available(Backend b);
    Backend active_backend();
    // Throws std::invalid_argument if the backend is not available on this machine/build.
    void set_backend(Backend b);

    using cplx = std::complex<double>;

    // y[i] += alpha * x[i]
    void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y);

    // Philox4x32-10 blocks. Block i uses counter {lo(base + i), hi(base + i), c2, c3}, where
    // base = c0 | c1 << 32, and writes its four words to out[4 i .. 4 i + 3].
    void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                    std::uint32_t *out);

    namespace scalar
    {
        void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y);
        void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                        std::uint32_t *out);
    }

    namespace avx2
    {
        void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y);
        void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                        std::uint32_t *out);
    }
}

#endif
