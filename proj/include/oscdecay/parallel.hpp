#ifndef OSCDECAY_PARALLEL_HPP
#define OSCDECAY_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace oscdecay {

/// Number of worker threads: OSCDECAY_THREADS if set (>= 1), else the
/// hardware count.
std::size_t worker_count();

/// Run fn(i) for i in [0, n) across workers in contiguous blocks.  Results
/// must go to preallocated per-index slots, which keeps runs deterministic
/// regardless of the thread count.  Exceptions are collected and the first
/// one rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace oscdecay

#endif
