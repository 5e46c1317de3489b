#pragma once

namespace acn {

/// Number of worker threads used by ring-parallel loops. Reads AC_THREADS
/// on first use; defaults to the OpenMP runtime's choice.
int thread_count();

/// Apply AC_THREADS to the OpenMP runtime. Safe to call repeatedly.
void configure_threads();

}  // namespace acn
