#ifndef SU11MODES_PARALLEL_HPP
#define SU11MODES_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace su11modes {

// Worker count taken from SU11MODES_THREADS when set, else the hardware.
inline unsigned worker_count() {
    if (const char* env = std::getenv("SU11MODES_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static partition of [0, n) into one contiguous chunk per worker.
// fn(begin, end, worker) must not touch other workers' state; callers
// merge per-worker results in worker order so output stays deterministic.
inline void parallel_for_chunks(std::size_t n,
                                const std::function<void(std::size_t, std::size_t, unsigned)>& fn,
                                unsigned workers = 0) {
    if (workers == 0) workers = worker_count();
    if (n == 0) return;
    if (workers > n) workers = static_cast<unsigned>(n);
    if (workers <= 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = begin + chunk < n ? begin + chunk : n;
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end, w);
    }
    for (auto& t : pool) t.join();
}

} // namespace su11modes

#endif
