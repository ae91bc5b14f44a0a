// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace pcqa {

/// Run body(chunk_index, begin, end) over fixed-size chunks of [0, n).
/// Chunk boundaries depend only on n and chunk_size, never on the worker
/// count, so per-chunk accumulators reduce to identical results regardless
/// of threading.
template <typename Body>
void parallel_chunks(std::size_t n, std::size_t chunk_size, int workers, Body&& body) {
    if (n == 0) return;
    std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    if (workers <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    int t = std::min<int>(workers, int(n_chunks));
    pool.reserve(std::size_t(t));
    for (int i = 0; i < t; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

inline int default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace pcqa
