#pragma once

#include <cstddef>
#include <functional>

namespace groundstate {

/// Worker-pool width: GROUNDSTATE_THREADS when set, hardware concurrency
/// otherwise, never less than 1.
int thread_budget();

/// Run fn(0..n-1) on at most thread_budget() workers. Tasks must be
/// independent; results must be written to disjoint slots so the outcome
/// is identical to the sequential order.
void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace groundstate
