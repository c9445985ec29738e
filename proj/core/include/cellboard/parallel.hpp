#pragma once

#include <cstddef>
#include <functional>

namespace cellboard {

// Default worker count: std::thread::hardware_concurrency(), at least 1.
unsigned default_thread_count();

// Runs body(i) for every i in [0, count) on up to `threads` workers. Work
// items are claimed from a shared counter; callers write results by index
// so the outcome does not depend on scheduling. The first exception thrown
// by any item is rethrown after all workers have joined.
void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& body);

}  // namespace cellboard
