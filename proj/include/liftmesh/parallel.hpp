#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace liftmesh {

/// Worker count: LIFTMESH_THREADS if set to a positive integer, else hardware concurrency.
std::size_t thread_count();

/// Runs fn(i) for i in [0, n) over contiguous chunks. Each index is written by exactly one
/// worker, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min(thread_count(), n / 1024 + 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
}

}  // namespace liftmesh
