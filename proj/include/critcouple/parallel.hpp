#pragma once

#include <cstddef>
#include <functional>

namespace critcouple::parallel {

/// Worker cap: CRITCOUPLE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Rows per chunk. Chunk boundaries depend only on n, never on the worker count.
inline constexpr std::size_t kChunk = 32;

/// Below this many rows everything runs on the calling thread.
inline constexpr std::size_t kParallelRows = 512;

/// Sum of row(i) over i in [0, n). Rows are summed in index order inside fixed chunks
/// and the chunk sums are combined by a pairwise tree in chunk order, so the result
/// is bit-identical for any worker count.
double reduce_rows(std::size_t n, const std::function<double(std::size_t)>& row);

/// Calls body(i) for every i in [0, n); bodies must write disjoint outputs.
void for_rows(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace critcouple::parallel
