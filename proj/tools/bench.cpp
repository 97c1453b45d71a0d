// Timing comparison of the OpenMP kernels against the serial reference
// implementations. Every pair must agree bitwise; speedup near 1x on a single
// core is the expected honest result.
#include <chrono>
#include <complex>
#include <cstdio>
#include <vector>

#include "hilop/gamma_ratio.hpp"
#include "hilop/hilbert_op.hpp"
#include "hilop/measure.hpp"
#include "hilop/norms.hpp"
#include "hilop/series.hpp"

using namespace hilop;
using cplx = std::complex<double>;

namespace {

template <typename F>
double time_ms(F&& body, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms, bool bitwise) {
  std::printf("%-24s %12.2f ms %12.2f ms %8.2fx  %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, bitwise ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-24s %15s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    MeasureSpec mu = MeasureSpec::make_density(1.0);
    std::vector<double> s, p;
    const double serial_ms = time_ms([&] { s = moment_batch_serial(mu, 0, 20000); }, 3);
    const double parallel_ms = time_ms([&] { p = moment_batch(mu, 0, 20000); }, 3);
    row("moment_batch 20k", serial_ms, parallel_ms, s == p);
  }

  {
    MeasureSpec mu = MeasureSpec::make_density(1.0);
    const double alpha = 2.0;
    const std::size_t n = 2048;
    GammaRatioTable gammas(alpha, 2 * n);
    MomentCache moments(mu);
    moments.ensure(2 * n);
    std::vector<cplx> a(n);
    for (std::size_t k = 0; k < n; ++k)
      a[k] = std::polar(1.0 / static_cast<double>(k + 1), static_cast<double>(k));
    std::vector<cplx> s, p;
    const double serial_ms = time_ms([&] { s = hankel_matvec_serial(gammas, moments, a, n); }, 5);
    const double parallel_ms = time_ms([&] { p = hankel_matvec(gammas, moments, a, n); }, 5);
    row("hankel_matvec 2048^2", serial_ms, parallel_ms, s == p);
  }

  {
    const DiskGrid grid = DiskGrid::dyadic(10, 256);
    double s = 0.0, p = 0.0;
    double serial_ms = 0.0, parallel_ms = 0.0;
    for (double a : {0.97, 0.98, 0.99}) {
      const TestFamilyMember f = make_family(Family::log_e, a, 0.0, 30000);
      serial_ms += time_ms([&] { s = bloch_seminorm_serial(f.series, 1.0, grid); }, 1);
      parallel_ms += time_ms([&] { p = bloch_seminorm(f.series, 1.0, grid); }, 1);
    }
    row("bloch_seminorm 30k", serial_ms, parallel_ms, s == p);
  }

  return 0;
}
