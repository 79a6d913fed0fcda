#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pgl2hom {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Temporarily pin the OpenMP thread count.
struct ThreadGuard {
    int saved;
    explicit ThreadGuard(int n) : saved(max_threads()) { set_threads(n); }
    ~ThreadGuard() { set_threads(saved); }
};

}  // namespace pgl2hom
