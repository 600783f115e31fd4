#pragma once

#include <cstddef>
#include <functional>

namespace nsexact {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (block partition).
/// Results must be written to disjoint slots by the caller; reductions stay
/// deterministic because assembly happens serially afterwards. Exceptions are
/// captured and rethrown on the calling thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace nsexact
