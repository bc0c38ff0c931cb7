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

#ifndef HMIMO_PARALLEL_HPP
#define HMIMO_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hmimo
{
    // 0 selects std::thread::hardware_concurrency().
    inline unsigned resolve_threads(unsigned requested)
    {
        if (requested != 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Runs body(i) for i in [0, n) on up to `threads` workers. Work is handed out one index at a
    // time; callers write results into slot i so the outcome never depends on scheduling.
    // The first exception thrown by any body is rethrown on the calling thread.
    template <typename Body>
    void parallel_for(std::size_t n, unsigned threads, Body &&body)
    {
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto run = [&]
        {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        };
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(run);
        run();
        pool.clear();
        if (error)
            std::rethrow_exception(error);
    }
}

#endif
