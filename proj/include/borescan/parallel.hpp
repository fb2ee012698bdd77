#pragma once

#include <cstddef>
#include <functional>

namespace borescan {

/// Worker count from BORESCAN_THREADS, else the hardware concurrency.
int default_thread_count();

/// Runs fn(0..n-1) on up to `threads` workers. The first exception thrown
/// by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace borescan
