#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace t2dist {

inline int default_thread_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs body(i) for i in [0, n). Work items must be independent and write only
/// to their own output slots, so the result does not depend on the thread
/// count or on scheduling. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, int threads, const Body& body) {
    if (n == 0) return;
    threads = std::max(1, threads);
    const std::size_t nthreads = std::min<std::size_t>(threads, n);
    if (nthreads == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            // Modest chunks keep the dispatch overhead low while still
            // balancing uneven per-item cost.
            const std::size_t chunk = std::max<std::size_t>(1, n / (nthreads * 16));
            for (;;) {
                const std::size_t begin = next.fetch_add(chunk);
                if (begin >= n || failed.load(std::memory_order_relaxed)) break;
                const std::size_t end = std::min(n, begin + chunk);
                for (std::size_t i = begin; i < end; ++i) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.exchange(true)) error = std::current_exception();
                        return;
                    }
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace t2dist
