#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace urnlab {

/// Worker count: explicit request wins, then URNLAB_THREADS, then the
/// hardware count. 0 means "auto".
inline int resolve_thread_count(int requested) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("URNLAB_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n;
}

/// Run fn(i) for i in [0, n) on a worker pool. Results must be written to
/// index-addressed slots by the caller so the outcome does not depend on
/// scheduling. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for_index(int n, int threads, Fn&& fn) {
    threads = std::min(resolve_thread_count(threads), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace urnlab
