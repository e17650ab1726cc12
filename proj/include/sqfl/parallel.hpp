#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqfl {

/// Runs body(block) for every block in [0, nblocks). Blocks are handed out
/// dynamically; callers write results into per-block slots and reduce them
/// in block order, so output never depends on `threads`.
template <class Body>
void parallel_for_blocks(std::uint64_t nblocks, unsigned threads, Body&& body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || nblocks <= 1) {
        for (std::uint64_t i = 0; i < nblocks; ++i)
            body(i);
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= nblocks)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(nblocks);
                return;
            }
        }
    };

    const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(threads, nblocks));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace sqfl
