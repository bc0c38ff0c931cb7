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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hmimo::kernels
{
    namespace
    {
        bool cpu_has_avx2()
        {
#if defined(HMIMO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        }

        Backend initial_backend()
        {
            if (const char *env = std::getenv("HMIMO_KERNELS"))
            {
                const std::string_view v(env);
                if (v == "scalar")
                    return Backend::scalar;
                if (v == "avx2" && cpu_has_avx2())
                    return Backend::avx2;
            }
            return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
        }

        std::atomic<Backend> &current()
        {
            static std::atomic<Backend> b{initial_backend()};
            return b;
        }
    }

    const char *backend_name(Backend b)
    {
        switch (b)
        {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
        }
        return "unknown";
    }

    bool backend_available(Backend b)
    {
        return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
    }

    Backend active_backend() { return current().load(std::memory_order_relaxed); }

    void set_backend(Backend b)
    {
        if (!backend_available(b))
            throw std::invalid_argument(std::string("kernel backend not available: ") + backend_name(b));
        current().store(b, std::memory_order_relaxed);
    }

    void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y)
    {
#ifdef HMIMO_HAVE_AVX2
        if (active_backend() == Backend::avx2)
            return avx2::caxpy(n, alpha, x, y);
#endif
        scalar::caxpy(n, alpha, x, y);
    }

    void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                    std::uint32_t *out)
    {
#ifdef HMIMO_HAVE_AVX2
        if (active_backend() == Backend::avx2)
            return avx2::philox4x32(key, counter, n, out);
#endif
        scalar::philox4x32(key, counter, n, out);
    }
}

#ifndef HMIMO_HAVE_AVX2
// Builds without the AVX2 translation unit still link the avx2:: symbols; they are unreachable
// because backend_available(avx2) is false.
namespace hmimo::kernels::avx2
{
    void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y) { scalar::caxpy(n, alpha, x, y); }
    void philox4x32(std::array<std::uint32_t, 2> key, std::array<std::uint32_t, 4> counter, std::size_t n,
                    std::uint32_t *out)
    {
        scalar::philox4x32(key, counter, n, out);
    }
}
#endif
