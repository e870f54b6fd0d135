#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace excir {

// Worker cap from EXCIR_THREADS; 0 or unset means one worker per hardware
// thread. Read once per process.
inline unsigned worker_thread_cap() {
    static const unsigned cap = [] {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("EXCIR_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v > 0) return static_cast<unsigned>(v);
        }
        return hw;
    }();
    return cap;
}

// Runs fn(i) for i in [0, count). Work is split by contiguous index blocks,
// so results written per-index are identical for any worker count.
// total_work is a cost hint (roughly: elements touched) used to skip thread
// spawn for small jobs. cap overrides the env-derived worker count (0 = env).
template <typename F>
void parallel_for(std::size_t count, std::size_t total_work, F&& fn, unsigned cap = 0) {
    constexpr std::size_t min_parallel_work = 1u << 21;
    std::size_t threads = cap != 0 ? cap : worker_thread_cap();
    threads = std::min(threads, count);
    if (total_work < min_parallel_work) threads = 1;
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace excir
