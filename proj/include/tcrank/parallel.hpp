#pragma once

#include <algorithm>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tcrank {

inline int max_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_workers(int count) {
#ifdef _OPENMP
    if (count > 0) omp_set_num_threads(count);
#else
    (void)count;
#endif
}

inline int worker_index() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

/// Runs body(i, worker) for i in [0, n). Each index is independent; callers
/// index per-worker scratch with `worker` and write results by index only.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t grain = 64) {
    const auto count = static_cast<long long>(n);
    const auto chunk = static_cast<int>(std::max<std::size_t>(grain, 1));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, chunk)
#endif
    for (long long i = 0; i < count; ++i) {
        body(static_cast<std::size_t>(i), worker_index());
    }
    (void)chunk;
}

} // namespace tcrank
