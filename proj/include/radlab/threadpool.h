// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_THREADPOOL_H
#define RADLAB_THREADPOOL_H

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace radlab {

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run fn(job) for job = 0..job_count-1 across up to `threads` workers. Jobs
// are claimed from an atomic counter; each job index runs exactly once, so
// results keyed by job index are identical to a sequential run. The first
// exception thrown by any job is rethrown on the calling thread.
inline void parallel_jobs(int job_count, int threads, const std::function<void(int)> &fn) {
    threads = std::min(effective_threads(threads), job_count);
    if (job_count <= 0) return;
    if (threads <= 1) {
        for (int j = 0; j < job_count; ++j) fn(j);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int job = next.fetch_add(1);
            if (job >= job_count) return;
            try {
                fn(job);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace radlab

#endif
