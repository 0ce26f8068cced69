#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace tablegrid {

// Worker count: hardware concurrency, capped by TABLEGRID_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n) across worker_count() threads. Callers write
// results by index so the outcome does not depend on scheduling. The first
// exception thrown by any body is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// SplitMix64 finaliser; used to derive per-entry seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace tablegrid
