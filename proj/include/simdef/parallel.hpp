#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace simdef {

// Runs fn(i) for i in [0, count) across hardware threads. Each index is
// claimed once; fn must only write to state owned by its index, which keeps
// the combined result independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    workers = std::min<std::size_t>(workers, count);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace simdef
