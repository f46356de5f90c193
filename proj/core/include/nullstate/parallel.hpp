#pragma once

#include <cstddef>
#include <functional>

namespace nullstate {

/// Worker count for grid scans: NULLSTATE_THREADS if set to a positive
/// integer, otherwise std::thread::hardware_concurrency() (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) over thread_count() workers with static
/// chunking. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace nullstate
