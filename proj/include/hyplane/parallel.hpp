#pragma once

#include <cstddef>
#include <functional>

namespace hyplane
{

//! Worker count: HYPLANE_THREADS if set (>= 1), otherwise hardware concurrency.
unsigned default_thread_count();

//! Runs task(i) for i in [0, n_tasks) on up to `threads` workers (0 = default).
//! Tasks are claimed dynamically; callers must not depend on execution order.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& task, unsigned threads = 0);

}  // namespace hyplane
