#pragma once

#include <cstddef>
#include <functional>

namespace morreylab {

/// Worker count from MORREYLAB_THREADS, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker, so results written per index do not depend on the worker count.
/// Nested calls run serially on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace morreylab
