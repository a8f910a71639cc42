#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rfh {

enum class ExecPolicy { serial, parallel };

// Index-space loop over [0, n). The serial policy is the reference
// implementation; the parallel one must produce identical results for any
// body that writes only to its own index.
template <typename Body>
void parallel_for(std::size_t n, const Body& body,
                  ExecPolicy policy = ExecPolicy::parallel) {
#ifdef _OPENMP
    if (policy == ExecPolicy::parallel) {
        #pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)policy;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace rfh
