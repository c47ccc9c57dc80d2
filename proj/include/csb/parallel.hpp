#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csb {

inline int hardware_threads() {
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

// Runs body(i) for i in [0,n). Results must be written to per-index slots so
// the outcome is independent of thread scheduling. parallel=false gives the
// serial reference path used by the tests and the benchmark.
template <class F>
void parallel_for(std::int64_t n, F&& body, bool parallel = true) {
    if (!parallel) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) body(i);
#else
    for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace csb
