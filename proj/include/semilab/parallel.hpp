#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace semilab {

// Worker count for nodewise loops. Initialised from LAB_THREADS (if set and
// positive) capped by the hardware concurrency; overridable for tests.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Below this many items loops run inline; thread start-up would dominate.
inline constexpr std::size_t kParallelGrain = 1u << 15;

// Calls body(begin, end) over disjoint chunks of [0, n). Each chunk writes
// only its own output range, so results do not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min(thread_count(), n / kParallelGrain + 1);
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = std::min(n, w * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    body(std::size_t{0}, std::min(n, chunk));
    for (auto& t : pool) t.join();
}

}  // namespace semilab
