#ifndef DELTARAD_PARALLEL_HPP
#define DELTARAD_PARALLEL_HPP

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace deltarad {

// Global worker cap set once by the CLI (--threads). 0 means "use the
// OpenMP default". Results are bit-identical for any cap: every parallel
// loop in this library either writes to disjoint indexed slots, merges
// integer counts, or reduces floating-point partials in a fixed order.
int max_threads();
void set_max_threads(int n);

#ifdef _OPENMP
inline int effective_threads() {
    const int cap = max_threads();
    const int def = omp_get_max_threads();
    return cap > 0 ? (cap < def ? cap : def) : def;
}
#else
inline int effective_threads() { return 1; }
#endif

template <class F>
void parallel_for(std::int64_t n, F&& body) {
#ifdef _OPENMP
    const int nt = effective_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::int64_t i = 0; i < n; ++i) body(i);
#else
    for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace deltarad

#endif
