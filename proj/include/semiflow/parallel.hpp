#pragma once

#include <cstdint>
#include <functional>

namespace semiflow {

/// Worker count: SEMIFLOW_THREADS caps it when set, otherwise the hardware
/// concurrency. Always >= 1.
int worker_count();

/// Runs fn(begin, end) over a static partition of [0, n). Chunks are disjoint
/// and cover the range; callers own making per-chunk results order-independent
/// (integer counts, index-ordered reductions). The first exception thrown by
/// any chunk, in chunk order, is rethrown after all workers join.
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn);

}  // namespace semiflow
