#pragma once

#include <exception>
#include <functional>
#include <stdexcept>

#ifdef QTEL_HAVE_OPENMP
#include <omp.h>
#endif

namespace qtel::par {

// Runtime switch for the OpenMP kernels; the serial path is the reference
// implementation and both must produce identical results.
inline bool& enabled_flag() {
    static bool on = false;
    return on;
}
inline bool enabled() { return enabled_flag(); }
inline void set_enabled(bool on) { enabled_flag() = on; }

inline int max_threads() {
#ifdef QTEL_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// index-parallel loop; results must be written to pre-sized slots so the
// outcome is independent of the schedule. Exceptions are collected and the
// first one rethrown after the loop.
template <class F>
void for_index(long n0, long n1, F&& f, bool parallel = enabled()) {
    if (n1 <= n0) return;
#ifdef QTEL_HAVE_OPENMP
    if (parallel) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (long i = n0; i < n1; ++i) {
            try {
                f(i);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    (void)parallel;
    for (long i = n0; i < n1; ++i) f(i);
}

} // namespace qtel::par
