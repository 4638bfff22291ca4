#pragma once

#include <cstddef>
#include <functional>

namespace lab {

/// Worker count: SLAG_LAB_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads.  Callers
/// write results into slot i, so output order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lab
