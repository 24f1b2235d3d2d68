#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccert::par {

/// Thread budget: hardware threads capped by CONTRACTION_CERT_THREADS (if set, > 0).
inline int effective_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("CONTRACTION_CERT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

/// Serial reference: max of f(i) over i in [0, n).
/// Kept alongside the parallel kernel so the two can be compared in tests
/// and benchmarks.  Requires n >= 1.
template <class F>
double max_reduce_serial(std::size_t n, F&& f) {
  double best = f(std::size_t{0});
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, f(i));
  return best;
}

/// OpenMP max-reduction over i in [0, n).  f must be safe to call
/// concurrently; max is order-independent so the result is deterministic
/// and equal to the serial reference.
template <class F>
double max_reduce(std::size_t n, F&& f) {
#ifdef _OPENMP
  if (n >= 32) {
    double best = -std::numeric_limits<double>::infinity();
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for reduction(max : best) schedule(static) \
    num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      best = std::max(best, f(static_cast<std::size_t>(i)));
    }
    return best;
  }
#endif
  return max_reduce_serial(n, f);
}

/// Serial reference for a plain element-wise map: out[i] = f(i).
template <class F>
void fill_serial(std::vector<double>& out, F&& f) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
}

/// Parallel element-wise map into a preallocated buffer (disjoint writes).
template <class F>
void fill(std::vector<double>& out, F&& f) {
#ifdef _OPENMP
  if (out.size() >= 32) {
    const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  fill_serial(out, f);
}

/// Parallel for over independent work items (trajectories, fixed-point solves).
template <class F>
void for_each_index(std::size_t n, F&& f) {
#ifdef _OPENMP
  if (n >= 2) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(effective_threads())
    for (std::ptrdiff_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace ccert::par
