#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP-backed data parallelism with a serial fallback. Every parallel
// kernel in this project writes result i from iteration i only, so output
// is identical for any job count; tests compare the OpenMP path against
// serial_for directly.

namespace editguard {

// jobs == 0 means "use the runtime default"; jobs == 1 forces serial.
inline int effective_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs <= 0) return omp_get_max_threads();
    return jobs;
#else
    (void)jobs;
    return 1;
#endif
}

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

// Serial reference loop. Kept as the comparison baseline for tests and the
// benchmark, and used for nested calls that are already inside a team.
template <typename F>
void serial_for(std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

template <typename F>
void parallel_for(std::size_t n, int jobs, F&& f) {
#ifdef _OPENMP
    const int threads = effective_jobs(jobs);
    if (threads > 1 && n > 1 && !omp_in_parallel()) {
        #pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            f(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)jobs;
#endif
    serial_for(n, f);
}

}  // namespace editguard
