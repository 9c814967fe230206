#pragma once

#include <functional>

namespace mpgemm {

/// Number of worker threads used by the engine. Defaults to the hardware
/// concurrency, overridable via the MPGEMM_THREADS environment variable or
/// set_thread_count(). All numeric results are worker-count independent.
int thread_count();
void set_thread_count(int n);

/// Runs fn(begin, end) over a static contiguous partition of [begin, end)
/// across the configured workers. Small ranges (below min_grain total work
/// units, as reported by the caller) run inline on the calling thread.
void parallel_for(int begin, int end, const std::function<void(int, int)>& fn);

} // namespace mpgemm
