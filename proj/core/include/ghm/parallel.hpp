#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ghm {

// 0 means "use the hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for every i in [0, n) across `threads` workers. Indices are
// claimed in small chunks from a shared counter; the first exception thrown
// is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, n / (64 * threads));
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const std::size_t begin = next.fetch_add(chunk);
                    if (begin >= n) break;
                    const std::size_t end = std::min(n, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ghm
