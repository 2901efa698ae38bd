#pragma once

#include <cstddef>
#include <functional>

namespace orbihear {

/// Worker count: hardware concurrency capped by ORBIHEAR_THREADS.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Exceptions are rethrown on the caller,
/// lowest index first.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace orbihear
