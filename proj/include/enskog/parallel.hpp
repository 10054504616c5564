#pragma once

#include <functional>

namespace enskog {

/// Number of worker threads used by parallel_for (default 1).
void set_thread_count(int threads);
int thread_count();

/// Runs body(begin, end) over a static partition of [0, n). Each index is
/// visited by exactly one worker, so results do not depend on the thread
/// count as long as body writes only to per-index storage.
void parallel_for(int n, const std::function<void(int, int)>& body);

}  // namespace enskog
