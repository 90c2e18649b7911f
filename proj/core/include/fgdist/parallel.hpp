#pragma once

#include <cstddef>
#include <functional>

namespace fgdist {

// FGDIST_THREADS when set to a positive integer, else the hardware count.
unsigned thread_count();

// Runs body(0..n-1) on up to thread_count() threads. Each index must write
// only its own output slot. The exception from the lowest failing index is
// rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fgdist
