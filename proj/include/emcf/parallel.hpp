#pragma once

// OpenMP compatibility layer. Code outside this header should not include
// <omp.h> directly.

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace emcf {

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#if defined(_OPENMP)
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline bool in_parallel() {
#if defined(_OPENMP)
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

}  // namespace emcf
