#pragma once

#include <cstddef>
#include <functional>

namespace tll {

// Worker count for parallel_for. Defaults to 1; the CLI wires --threads /
// TLL_THREADS into this. Values < 1 are clamped to 1.
void set_thread_count(int n);
int  thread_count();

// Splits [0, n) into contiguous chunks, one worker per chunk. Each index is
// touched by exactly one worker, so code that only writes to its own slots
// produces bitwise identical results for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace tll
