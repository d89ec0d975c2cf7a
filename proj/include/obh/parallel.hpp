#pragma once
// Index-parallel loop over independent work items. Aggregation stays
// deterministic because each index writes its own slot; ORLICZ_BIHARM_THREADS
// caps the worker count (1 disables threading).
#include <cstddef>
#include <functional>

namespace obh {

int max_threads();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace obh
