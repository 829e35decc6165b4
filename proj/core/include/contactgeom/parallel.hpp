#pragma once

#include <cstddef>
#include <functional>

namespace contactgeom {

/// Worker count used by parallel_for. Defaults to CONTACT_GEOM_THREADS when
/// set, otherwise the hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs body(k) for k in [0, n). Work is split into contiguous chunks, so any
/// per-index output written by body is independent of the schedule. Calls made
/// from inside a running parallel_for execute sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace contactgeom
