#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace vwlab {

// Worker count for site-parallel loops, from VWLAB_THREADS (default: all
// hardware threads). Reductions stay serial so results are bit-reproducible
// at any thread count.
inline int thread_count() {
    static const int n = [] {
        if (const char *s = std::getenv("VWLAB_THREADS")) {
            const int v = std::atoi(s);
            if (v >= 1) return v;
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return hc ? int(hc) : 1;
    }();
    return n;
}

template <class F>
void parallel_for(long n, F &&fn) {
    const int workers = thread_count();
    if (workers == 1 || n < 4096) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    const long chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto &t : pool) t.join();
}

} // namespace vwlab
