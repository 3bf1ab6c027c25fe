#pragma once

#include <cstddef>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drq {

/* Process-wide switch between the OpenMP kernels and the serial reference
 * paths.  Controlled by force_serial() or the DRQ_SERIAL environment
 * variable; every parallel kernel must produce results identical to its
 * serial counterpart (exact arithmetic, order-independent merges). */
inline bool& serial_flag() {
    static bool flag = std::getenv("DRQ_SERIAL") != nullptr;
    return flag;
}

inline void force_serial(bool on) { serial_flag() = on; }

inline bool parallel_enabled() {
#ifdef _OPENMP
    return !serial_flag();
#else
    return false;
#endif
}

/* parallel_for(n, body): body(i) for i in [0, n), possibly concurrently.
 * Each body call must write only to its own slot of a preallocated output. */
template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
    if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace drq
