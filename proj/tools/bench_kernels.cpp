// Micro-benchmark for the mod-p row kernels: scalar vs the dispatched SIMD
// variant, on elimination-shaped axpy workloads.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <vector>

#include "spicy/kernels.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    const std::uint64_t p = 2147483647;  // 2^31 - 1
    const std::size_t n = 4096;
    const int reps = 20000;

    std::mt19937_64 rng(12345);
    std::vector<std::uint64_t> src(n), dst(n);
    for (auto& x : src)
        x = rng() % p;
    for (auto& x : dst)
        x = rng() % p;
    std::uint64_t c = rng() % p;

    for (const auto* k : spicy::kern::runnable_kernels()) {
        std::vector<std::uint64_t> work = dst;
        auto t0 = clock::now();
        for (int r = 0; r < reps; ++r)
            k->axpy(work.data(), src.data(), c, n, p);
        auto t1 = clock::now();
        double ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
        double per_elem = ns / (static_cast<double>(reps) * n);
        std::uint64_t sink = 0;
        for (auto x : work)
            sink ^= x;
        std::printf("%-8s axpy mod p: %7.3f ns/elem  (checksum %016llx)\n", k->name, per_elem,
                    static_cast<unsigned long long>(sink));
    }
    return 0;
}
