#pragma once

#include <cstddef>
#include <functional>

namespace howmany {

/// Runs body(i) for i in [0, count) on up to `threads` worker threads
/// (0 means hardware concurrency). The first exception thrown by any body is
/// rethrown on the calling thread after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace howmany
