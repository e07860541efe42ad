#pragma once

#include <cstddef>
#include <functional>

namespace latfrak {

// Worker count: LATFRAK_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = thread_count()).
// Indices are dealt out in contiguous blocks; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace latfrak
