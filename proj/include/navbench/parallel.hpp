#pragma once

#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace navbench {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs body(i) for i in [0, n). threads == 1 runs inline; threads == 0 uses
// all cores. Bodies must not depend on iteration order: callers write results
// into pre-sized slots by index so output is identical at any thread count.
// The first exception thrown by any iteration is rethrown after the loop
// (exceptions must not unwind out of an OpenMP region).
template <class F>
void parallel_for(std::int64_t n, int threads, F&& body) {
#ifdef _OPENMP
  if (threads != 1 && n > 1) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    body(i);
  }
}

}  // namespace navbench
