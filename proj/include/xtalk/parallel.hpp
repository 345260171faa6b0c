#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace xtalk {

// Worker cap: CROSSTALK_ARENA_THREADS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CROSSTALK_ARENA_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

// Runs fn(0..n-1). Tasks must be independent; each derives its own RNG seed
// from its index, so results do not depend on the worker count. The first
// exception thrown by a task is rethrown on the calling thread.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; i++) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<size_t>(workers, n));
    std::vector<std::exception_ptr> errors(used);
    for (unsigned w = 0; w < used; w++) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += used) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace xtalk
