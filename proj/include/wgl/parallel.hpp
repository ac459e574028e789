#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace wgl {

// Process-wide worker count for elementwise field loops. Results must be
// identical for every thread count: only pure per-point maps are split, and
// every reduction runs over a fixed tree on a single thread.
inline int& thread_count() {
    static int n = 1;
    return n;
}

inline void set_thread_count(int n) { thread_count() = std::max(1, n); }

template <class Fn>  // Fn(int begin, int end), half-open row range
inline void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int b = w * chunk;
        const int e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace wgl
