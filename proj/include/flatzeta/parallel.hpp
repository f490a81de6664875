#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace flatzeta {

/// Worker count: FLATZETA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int default_thread_count();

/// Runs body(i) for i in [0,n) on up to `threads` workers (0 = default).
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace flatzeta
