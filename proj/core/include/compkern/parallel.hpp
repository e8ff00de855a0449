#pragma once

#include <cstddef>
#include <functional>

namespace compkern {

// Caps worker threads used by gram assembly, cross-validation and the
// interpretation estimators. 0 restores the default (hardware concurrency).
void set_max_threads(unsigned threads);
unsigned max_threads();

// Runs body(i) for i in [0, n). Work is split into contiguous chunks; body
// must only write to state owned by index i. Exceptions thrown by any worker
// are rethrown on the calling thread (the one from the lowest chunk wins).
// Calls made from inside a worker run serially on that worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace compkern
