#ifndef QVO_PARALLEL_HPP
#define QVO_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qvo {

inline unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for every i in [0, n). Work is handed out in contiguous blocks
// via an atomic cursor, so scheduling is thread-count dependent but results
// are not: fn must write only to state owned by index i. Each worker gets a
// stable worker id for scratch buffers.
inline void parallel_for(std::size_t n, unsigned threads, std::size_t block,
                         const std::function<void(std::size_t, unsigned)>& fn) {
    if (threads <= 1 || n < 2 * block) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&](unsigned id) {
        try {
            for (;;) {
                const std::size_t begin = cursor.fetch_add(block);
                if (begin >= n) return;
                const std::size_t end = std::min(begin + block, n);
                for (std::size_t i = begin; i < end; ++i) fn(i, id);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qvo

#endif
