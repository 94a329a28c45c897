#pragma once

// Deterministic fan-out helper.
//
// Work is cut into fixed-size blocks whose boundaries do not depend on the
// worker count, and callers reduce per-block results in block order, so
// every computation is bit-identical for any MORREY_THREADS setting.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace morrey {

/// Worker cap: MORREY_THREADS when set, otherwise the machine default.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("MORREY_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

inline std::size_t block_count(std::size_t n, std::size_t block) {
    return n == 0 ? 0 : (n + block - 1) / block;
}

/// Runs f(begin, end, block_index) over blocks [i*block, (i+1)*block) of 0..n.
template <typename Fn>
void for_each_block(std::size_t n, std::size_t block, Fn&& f) {
    const std::size_t blocks = block_count(n, block);
    if (blocks == 0) return;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), blocks));
    auto run_block = [&](std::size_t b) { f(b * block, std::min(n, (b + 1) * block), b); };
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b; (b = next.fetch_add(1, std::memory_order_relaxed)) < blocks;) run_block(b);
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

} // namespace morrey
