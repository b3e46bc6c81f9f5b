#pragma once

#include <functional>

namespace forge {

// worker cap: FORGE_THREADS env var when set, hardware concurrency otherwise
int worker_count();

// chunked index-parallel loop; fn must write only to disjoint slots.
// Falls back to serial execution for tiny ranges or a single worker.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace forge
