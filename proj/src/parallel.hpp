#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace tsmom::detail {

/// Runs fn(0..total-1) across `workers` threads in a static round-robin
/// partition. Call sites must make fn write to disjoint slots and not throw,
/// so any worker count (including 1) produces identical results.
inline void parallel_for(int total, int workers, const std::function<void(int)>& fn) {
    if (workers == 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min(workers, total);
    if (workers <= 1) {
        for (int i = 0; i < total; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < total; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tsmom::detail
