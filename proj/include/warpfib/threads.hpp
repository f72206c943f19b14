#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace warpfib {

/// Global worker count for chunked parallel loops. 0 = hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
///
/// The chunk grid depends only on n and chunk_size, never on the worker count,
/// so callers that reduce per-chunk partial results in chunk order get
/// bitwise-reproducible sums for any --threads value.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace warpfib
