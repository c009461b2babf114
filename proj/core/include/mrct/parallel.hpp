#pragma once

#include <cstddef>
#include <functional>

namespace mrct {

/// Worker threads used by the per-frame transform kernels. 0 selects
/// std::thread::hardware_concurrency(). Defaults to 1.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Splits [0, n) into contiguous chunks and runs `body(begin, end)` on each,
/// concurrently when more than one worker is configured. Exceptions thrown by
/// a chunk are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace mrct
