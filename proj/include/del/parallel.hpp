#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace del {

// Thread-count control for the OpenMP kernels.  n <= 0 leaves the runtime
// default untouched.  Results never depend on the thread count (see
// reduce.hpp); this only affects wall time.
inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Apply f(i) for i in [0, n).  f must write only to slots owned by index i;
// under that contract the loop is race-free and the result is independent of
// scheduling.
template <class F>
inline void parallel_for(std::size_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    f(static_cast<std::size_t>(i));
  }
}

}  // namespace del
