#pragma once

#include <cstddef>
#include <functional>

namespace modcoh {

/// Worker count: TOOLKIT_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned thread_count();

/// Splits [0, n) into contiguous chunks, one per worker. `fn(chunk, begin,
/// end)` runs once per chunk; chunk boundaries depend only on n and the
/// worker count so callers can merge per-chunk results in chunk order.
void parallel_chunks(std::size_t n,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn,
                     unsigned workers);

}  // namespace modcoh
