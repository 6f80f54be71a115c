#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chowlift {

// OpenMP loop over [0, n). Bodies must write to disjoint state; result
// assembly stays with the caller so reports come out deterministic no matter
// how many threads ran.
template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

// Serial reference loop, kept so tests and the benchmark can compare the
// parallel kernels against it.
template <class F>
void serial_for(std::size_t n, F&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace chowlift
