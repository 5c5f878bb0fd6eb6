#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace vbag {

// Run fn(0..count-1) on up to `workers` threads. Each index is processed
// exactly once; results must be written to per-index slots so the outcome
// does not depend on scheduling. workers <= 1 runs inline.
inline void parallel_for(int count, int workers,
                         const std::function<void(int)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    int nw = std::min(workers, count);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errs(nw);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace vbag
