#pragma once

#include <cstddef>
#include <functional>

namespace hvol {

/// Worker count: HVOL_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(chunk_index, begin, end) over a contiguous split of [0, n) into at
/// most thread_count() chunks and waits for all of them. Chunk boundaries
/// depend only on n and the worker count.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace hvol
