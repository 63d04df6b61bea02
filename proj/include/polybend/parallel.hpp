#pragma once

#include <cstddef>
#include <functional>

namespace polybend {

// Worker count: hardware concurrency capped by POLYBEND_THREADS (>= 1).
unsigned worker_count();

// Runs body(i) for i in [0, count).  Each index is handled by exactly one call;
// callers write results into per-index slots so scheduling never changes output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace polybend
