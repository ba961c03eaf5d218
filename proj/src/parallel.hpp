// SPDX-License-Identifier: Apache-2.0
//
// fhsplit - fronthaul bit allocation for massive MU-MIMO
// Copyright (C) 2026 The fhsplit Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fhsplit::detail {

// Runs fn(i) for i in [0, n) on up to `workers` threads. If any call throws,
// the exception of the smallest failing index is rethrown after all workers
// stop, so failures are reported the same way for every worker count.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn &&fn) {
    const std::size_t pool = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_index = n;
    std::exception_ptr err;

    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    if (pool == 1) {
        body();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (std::size_t t = 0; t < pool; ++t)
            threads.emplace_back(body);
        for (auto &th : threads)
            th.join();
    }
    if (err)
        std::rethrow_exception(err);
}

// Pairwise sum of items[lo, hi); T needs operator+ and a copy constructor.
template <typename T>
T pairwise_sum(const std::vector<T> &items, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1)
        return items[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    T left = pairwise_sum(items, lo, mid);
    left += pairwise_sum(items, mid, hi);
    return left;
}

} // namespace fhsplit::detail
