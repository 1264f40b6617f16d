#pragma once

#include <cstddef>
#include <functional>

namespace tfsq {

// Thread count from the TFSQUEEZE_THREADS environment variable, or 1.
int default_thread_count();

// Runs fn(begin, end) over contiguous blocks of [0, count) on up to
// `threads` workers. Each index is processed exactly once; callers write to
// disjoint rows, so results do not depend on the thread count.
void parallel_blocks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace tfsq
