#pragma once

#include <cstddef>

#ifdef FILTSPEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace filtspec {

/// Execution mode for batch kernels. Results are required to be identical in
/// both modes; the serial path is the reference the tests compare against.
enum class Exec { serial, parallel };

/// Runs f(0..n-1), with OpenMP in parallel mode. f must write only to its own
/// output slot.
template <class F>
void parallel_for(std::size_t n, Exec mode, F&& f) {
#ifdef FILTSPEC_HAVE_OPENMP
  if (mode == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace filtspec
