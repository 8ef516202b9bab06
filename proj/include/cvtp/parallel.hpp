#pragma once

#include <cstddef>
#include <functional>

namespace cvtp {

/// Worker count: CVTP_THREADS if set to a positive integer, else the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, count). Each index is evaluated exactly once; callers write
/// results into preallocated slots so output order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cvtp
