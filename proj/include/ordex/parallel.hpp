#pragma once

#include <cstddef>
#include <functional>

namespace ordex {

// Worker cap: ORDEX_THREADS when set (>=1), else hardware concurrency.
std::size_t max_threads();

// Runs fn(i) for i in [0, n) across up to max_threads() workers in static
// contiguous chunks. Each index is processed exactly once, so work whose
// result lands in slot i is independent of the worker count. The first
// exception thrown by a worker is rethrown on the calling thread after all
// workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ordex
