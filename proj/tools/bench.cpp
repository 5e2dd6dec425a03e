// Timing comparison of the parallel batch kernels against their serial
// reference paths.  Also cross-checks that both paths produce identical
// results (the parallel kernels only write disjoint buffer slots).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "nlab/models.hpp"
#include "nlab/noether.hpp"
#include "nlab/parallel.hpp"
#include "nlab/poisson.hpp"
#include "nlab/qwave.hpp"

using namespace nlab;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

struct Row {
  const char* name;
  std::size_t n;
  double serial_ms;
  double parallel_ms;
  double max_diff;
};

void print(const Row& r) {
  std::printf("%-34s n=%-8zu serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   max|diff| %.3g\n",
              r.name, r.n, r.serial_ms, r.parallel_ms,
              r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0, r.max_diff);
}

template <class F>
Row bench_map(const char* name, std::int64_t n, F&& f) {
  double t0 = now_ms();
  const auto serial = parallel::map_serial<double>(n, f);
  const double t1 = now_ms();
  const auto par = parallel::map<double>(n, f);
  const double t2 = now_ms();
  double diff = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    diff = std::max(diff, std::abs(serial[i] - par[i]));
  return {name, static_cast<std::size_t>(n), t1 - t0, t2 - t1, diff};
}

}  // namespace

int main() {
  std::printf("noether-lab kernel benchmark (OpenMP %s, thread cap %d)\n",
              parallel::openmp_enabled() ? "on" : "off", parallel::thread_cap());

  {
    const auto model = models::constant_force_system(1.3, {0.4, 0.0, 2.1});
    const auto& sys = model.system();
    const auto states = sample_states(3, 200000, 99, 2.0);
    const auto tr = model.boost(2, 0.5);
    print(bench_map("consistency residuals (d=3)", 200000, [&](std::int64_t i) {
      const auto rep = noether::verify_consistency(
          tr, sys, std::span<const PhaseState>(&states[i], 1), 1e-9);
      return rep.worst();
    }));

    const auto gamma = model.boost_charge(1);
    print(bench_map("conservation residuals (d=3)", 200000, [&](std::int64_t i) {
      return poisson::total_derivative(gamma, sys, states[i]);
    }));
  }

  {
    const auto model = models::harmonic_system({1.0, 2.5, 0.7});
    const auto& sys = model.system();
    const auto states = sample_states(3, 100000, 7, 1.5);
    const auto A0 = model.charge(0);
    print(bench_map("complex charge derivative (d=3)", 100000, [&](std::int64_t i) {
      return std::abs(poisson::total_derivative(A0, sys, states[i]));
    }));
  }

  {
    const auto grid = qwave::make_grid(1 << 20, -40.0, 40.0, 1.0, 1.0, 1.5);
    const auto psi = qwave::energy_state(grid, 1.0);
    const double t0 = now_ms();
    const double r = qwave::stationarity_residual(psi, 1.0);
    const double t1 = now_ms();
    std::printf("%-34s n=%-8d one pass %11.2f ms   residual %.3g\n",
                "wave stationarity (2^20 grid)", grid.n, t1 - t0, r);
  }

  return 0;
}
