#pragma once

#include <cstddef>
#include <utility>

#ifdef COMAN_HAVE_OPENMP
#include <omp.h>
#endif

namespace coman {

/// Execution mode for the data-parallel kernels (trial generation, corpus
/// building, tree fitting, streaming evaluation). Serial is the reference
/// path; OpenMP must produce bit-identical results, which every kernel
/// guarantees by writing to preallocated per-index slots with per-index
/// derived seeds.
enum class ExecMode { Serial, Parallel };

inline ExecMode& default_exec_mode() {
    static ExecMode mode = ExecMode::Parallel;
    return mode;
}

inline int hardware_threads() {
#ifdef COMAN_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class Body>
void parallel_for(std::size_t n, ExecMode mode, Body&& body) {
#ifdef COMAN_HAVE_OPENMP
    if (mode == ExecMode::Parallel) {
        #pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    parallel_for(n, default_exec_mode(), std::forward<Body>(body));
}

}  // namespace coman
