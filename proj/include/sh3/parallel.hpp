#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sh3 {

/// Execution policy for the quadrature kernels.  threads == 1 selects the
/// plain serial loop; threads == 0 uses the OpenMP default team size.
struct ExecPolicy {
  int threads = 0;

  int resolved_threads() const {
#ifdef _OPENMP
    if (threads <= 0) return omp_get_max_threads();
    return threads;
#else
    return 1;
#endif
  }
};

/// Deterministic parallel sum: the index range is cut into fixed chunks,
/// each chunk is summed serially, and chunk results are combined in index
/// order.  The result is bit-identical for any thread count.
template <class F>
double parallel_sum(std::size_t n, const ExecPolicy &pol, F &&term) {
  if (n == 0) return 0.0;
  const std::size_t chunk = 1024;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(pol.resolved_threads())
#endif
  for (long long ci = 0; ci < static_cast<long long>(nchunks); ++ci) {
    std::size_t lo = static_cast<std::size_t>(ci) * chunk;
    std::size_t hi = std::min(lo + chunk, n);
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(ci)] = s;
  }
  double total = 0;
  for (double p : partial) total += p;
  return total;
}

/// Serial twin of parallel_sum, kept as the reference path for tests and
/// benchmarks.
template <class F>
double serial_sum(std::size_t n, F &&term) {
  const std::size_t chunk = 1024;
  double total = 0;
  for (std::size_t lo = 0; lo < n; lo += chunk) {
    std::size_t hi = std::min(lo + chunk, n);
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    total += s;
  }
  return total;
}

/// Parallel for over [0, n).
template <class F>
void parallel_for(std::size_t n, const ExecPolicy &pol, F &&body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(pol.resolved_threads())
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
}

/// Deterministic parallel max.
template <class F>
double parallel_max(std::size_t n, const ExecPolicy &pol, F &&term) {
  if (n == 0) return 0.0;
  std::vector<double> vals(n);
  parallel_for(n, pol, [&](std::size_t i) { vals[i] = term(i); });
  double m = vals[0];
  for (double v : vals) m = std::max(m, v);
  return m;
}

}  // namespace sh3
