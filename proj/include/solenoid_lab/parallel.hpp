#pragma once

#include <cstddef>
#include <functional>

namespace solenoid_lab {

/// Worker cap from SOLENOID_LAB_THREADS (positive integer), falling back to
/// the hardware concurrency. Throws InvalidArgument on a malformed value.
unsigned thread_cap();

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on up to
/// thread_cap() threads. Chunk boundaries depend on the thread count, so
/// bodies must write disjoint outputs indexed by position only.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 4096);

}  // namespace solenoid_lab
