#pragma once

#include <cstddef>
#include <functional>

namespace bdcp {

// Resolves a requested worker count: 0 means "use hardware concurrency".
unsigned effective_threads(unsigned requested);

// Runs body(i) for i in [0, count) on up to `threads` workers. Iterations
// must be independent; outputs should go to per-index slots so the result
// does not depend on scheduling. The first exception thrown by any worker
// is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)> &body);

}  // namespace bdcp
