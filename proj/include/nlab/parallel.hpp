#pragma once

// Batch kernels: every verification sweep maps an independent function over
// states or grid points.  The parallel path writes disjoint slots of a
// preallocated buffer (OpenMP when compiled in), reductions happen serially
// afterwards, so results are identical to the serial reference bit for bit.

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlab::parallel {

/// Thread cap from NOETHER_LAB_THREADS; 0 means "let the runtime decide".
int thread_cap();

bool openmp_enabled();

template <class F>
void for_each_serial(std::int64_t n, F&& f) {
  for (std::int64_t i = 0; i < n; ++i) f(i);
}

template <class F>
void for_each(std::int64_t n, F&& f) {
#ifdef _OPENMP
  const int cap = thread_cap();
  if (cap > 0) {
#pragma omp parallel for schedule(static) num_threads(cap)
    for (std::int64_t i = 0; i < n; ++i) f(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) f(i);
  }
#else
  for_each_serial(n, f);
#endif
}

template <class T, class F>
std::vector<T> map(std::int64_t n, F&& f) {
  std::vector<T> out(static_cast<std::size_t>(n));
  for_each(n, [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = f(i); });
  return out;
}

template <class T, class F>
std::vector<T> map_serial(std::int64_t n, F&& f) {
  std::vector<T> out(static_cast<std::size_t>(n));
  for_each_serial(n,
                  [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = f(i); });
  return out;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace nlab::parallel
