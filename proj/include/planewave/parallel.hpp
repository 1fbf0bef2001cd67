#pragma once

#include <cstddef>
#include <functional>

namespace planewave {

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Each index runs exactly once;
/// the first exception thrown by any worker is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace planewave
