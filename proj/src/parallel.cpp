#include "semilab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace semilab {

namespace {

std::size_t initial_thread_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LAB_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
        } catch (const std::exception&) {
            // Unparseable values are ignored.
        }
    }
    return n;
}

std::atomic<std::size_t>& threads() {
    static std::atomic<std::size_t> count{initial_thread_count()};
    return count;
}

}  // namespace

std::size_t thread_count() { return threads().load(std::memory_order_relaxed); }

void set_thread_count(std::size_t n) { threads().store(std::max<std::size_t>(1, n)); }

}  // namespace semilab
