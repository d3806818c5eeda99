#pragma once

#include <cstddef>
#include <functional>

namespace lctnumra {

// Worker count from LCT_NUMRA_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so per-index results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lctnumra
