#pragma once

// Thread-count helpers that degrade to a single thread when the build has
// no OpenMP support. Pragmas compile away on their own.
#ifdef _OPENMP
#include <omp.h>
#else
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif
