// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace metaprism {

/// Run fn(i) for i in [0, count). Work is split into contiguous static
/// chunks; each index writes only its own output slot, so results are
/// independent of scheduling. threads <= 1 (or count < 2) runs inline.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    const unsigned workers = threads > count ? static_cast<unsigned>(count) : threads;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&fn, w, workers, count] {
            for (std::size_t i = w; i < count; i += workers)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

/// Requested worker count; 0 selects the hardware concurrency.
unsigned resolve_threads(unsigned requested);

}  // namespace metaprism
