#include "critcouple/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace critcouple::parallel {

namespace {

double tree_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

void run_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& chunk_body, std::size_t n_rows) {
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n_chunks));
    if (n_rows < kParallelRows || workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) chunk_body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < n_chunks; c = next++) chunk_body(c);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("CRITCOUPLE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double reduce_rows(std::size_t n, const std::function<double(std::size_t)>& row) {
    if (n == 0) return 0.0;
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(n_chunks, 0.0);
    run_chunks(
        n_chunks,
        [&](std::size_t c) {
            double acc = 0.0;
            const std::size_t end = std::min(n, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) acc += row(i);
            partial[c] = acc;
        },
        n);
    return tree_sum(partial, 0, n_chunks);
}

void for_rows(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    run_chunks(
        n_chunks,
        [&](std::size_t c) {
            const std::size_t end = std::min(n, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) body(i);
        },
        n);
}

}  // namespace critcouple::parallel
