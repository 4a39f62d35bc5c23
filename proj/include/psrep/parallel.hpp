#pragma once

#include <cstddef>
#include <functional>

namespace psrep {

// Runs body(k) for every k in [0, n) on up to `threads` workers (<= 0 means
// hardware concurrency). Indices are claimed dynamically, so callers write
// results into per-index slots to keep output order fixed. If bodies throw,
// the exception of the smallest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

int resolve_threads(int threads) noexcept;

}  // namespace psrep
