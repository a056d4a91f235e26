#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace spicy {

/// Worker count: SPICY_THREADS if set (clamped to >= 1), else the hardware.
inline std::size_t worker_count() {
    if (const char* env = std::getenv("SPICY_THREADS")) {
        try {
            long n = std::stol(env);
            if (n >= 1)
                return static_cast<std::size_t>(n);
        } catch (...) {
        }
        return 1;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Runs f(i) for i in [0, n) on the worker pool. Results must be written to
/// pre-sized, index-owned slots; the iteration set is partitioned statically
/// so output stays deterministic regardless of thread count.
template <class Fn>
void parallel_for_index(std::size_t n, Fn&& f) {
    std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                f(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

}  // namespace spicy
