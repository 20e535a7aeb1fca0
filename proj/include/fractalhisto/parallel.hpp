#pragma once

#include <cstddef>
#include <functional>

namespace fractalhisto {

/// Worker cap: FRACTALHISTO_THREADS when set, else hardware concurrency
/// (itself capped at 8). Always at least 1.
unsigned thread_budget();

/// Static-chunked parallel loop over [begin, end). The body must write to
/// disjoint state per index; chunk results that need combining should be
/// reduced with order-independent operations (e.g. max).
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& chunk_body,
                  std::size_t min_grain = 1 << 14);

}  // namespace fractalhisto
