#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace risplan {

// Static chunking over [0, n); results must not depend on the split, so
// callers may only write to disjoint per-index state.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int workers = std::max(1, jobs);
    if (workers == 1 || n < 2) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        const std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : threads) t.join();
}

} // namespace risplan
