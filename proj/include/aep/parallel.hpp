#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace aep {

/// Calls body(i) for i in [0, n) on up to `jobs` threads. Each index is
/// handled exactly once; if several calls throw, the exception from the
/// smallest index is rethrown so failures do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
    const std::size_t workers =
        std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::mutex mutex;
    std::size_t failed_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr failure;
    auto run = [&](std::size_t worker) {
        for (std::size_t i = worker; i < n; i += workers) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace aep
