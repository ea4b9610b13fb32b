#pragma once

#include <cstddef>
#include <functional>

namespace dancar {

/// Splits [0, count) into contiguous chunks and runs
/// fn(chunk_index, begin, end) on up to `threads` workers. Chunks are
/// disjoint and ordered, so callers that combine per-chunk results in
/// chunk index order get output independent of scheduling and thread
/// count. threads <= 1 runs inline. The first exception thrown by any
/// chunk is rethrown after all workers join.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// threads == 0 means "pick from hardware concurrency".
int resolve_thread_count(int threads);

}  // namespace dancar
