#pragma once

#include <utility>

#if defined(PSIFRAC_HAVE_OPENMP)
#include <omp.h>
#endif

namespace psifrac {

/// Execution policy for the O(N^2) per-target-node sweeps. Serial is the
/// reference implementation; Parallel distributes rows over OpenMP threads.
/// Each row is computed in a fixed serial order by exactly one thread, so
/// both policies produce bitwise-identical results.
enum class Exec { Serial, Parallel };

namespace kernels {

namespace serial {

template <typename RowFn>
void rows(int n, RowFn&& fn)
{
    for (int j = 0; j < n; ++j)
        fn(j);
}

} // namespace serial

namespace openmp {

template <typename RowFn>
void rows(int n, RowFn&& fn)
{
#if defined(PSIFRAC_HAVE_OPENMP)
    // Later rows touch more cells; dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 8)
    for (int j = 0; j < n; ++j)
        fn(j);
#else
    serial::rows(n, std::forward<RowFn>(fn));
#endif
}

} // namespace openmp

template <typename RowFn>
void rows(int n, Exec exec, RowFn&& fn)
{
    if (exec == Exec::Parallel)
        openmp::rows(n, std::forward<RowFn>(fn));
    else
        serial::rows(n, std::forward<RowFn>(fn));
}

int max_threads();

} // namespace kernels

} // namespace psifrac
