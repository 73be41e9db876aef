#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace progmom {

// Runs fn(chunk_index) for chunk_index in [0, chunk_count) on up to
// `threads` workers. Chunk boundaries are the caller's: results must be
// stored per chunk and merged in chunk order afterwards, so the outcome
// is identical for every worker count.
inline void run_chunks(std::size_t chunk_count, unsigned threads,
                       const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || chunk_count <= 1) {
        for (std::size_t i = 0; i < chunk_count; ++i) fn(i);
        return;
    }
    unsigned n = threads;
    if (n > chunk_count) n = static_cast<unsigned>(chunk_count);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= chunk_count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

inline unsigned default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return hw < 8 ? hw : 8;
}

}  // namespace progmom
