#pragma once

#include <cstddef>
#include <span>

#include "hilop/series.hpp"

namespace hilop {

/// Grid estimate of sup (1-|z|^2)^alpha |f'(z)| (a lower bound for the sup).
double bloch_seminorm(const CoefficientSeries& f, double alpha, const DiskGrid& grid);
double bloch_seminorm_serial(const CoefficientSeries& f, double alpha, const DiskGrid& grid);

/// |f(0)| plus the seminorm estimate.
double bloch_norm(const CoefficientSeries& f, double alpha, const DiskGrid& grid);

// Growth envelope quotient: max over the grid of |f(z)| / g_alpha(|z|) with
//   g_alpha = 1 (alpha < 1),  log(e/(1-|z|^2)) (alpha = 1),
//   (1-|z|^2)^(1-alpha) (alpha > 1),
// the pointwise growth permitted by a bounded weighted-derivative norm.
double growth_bound_check(const CoefficientSeries& f, double alpha, const DiskGrid& grid);

// Area-integral norm integral_D |f| dA (normalized area). The radial integral
// is adaptive; each angular mean doubles its sample count until it settles.
// The stored truncation is integrated over the full closed disk, so the
// caller's coefficients must describe the function there (polynomials and the
// built-in families with parameter < 1 do).
double bergman_a1_norm(const CoefficientSeries& f, double rel_tol = 1e-8,
                       std::size_t initial_angles = 64);

// Max over complete dyadic blocks n (indices 2^n+1 .. 2^{n+1}, complete when
// 2^{n+1} <= degree) of sum |a_k / k^(alpha-1)|^2. Fewer than two complete
// blocks raises truncation_error. The quantity scales quadratically with the
// coefficients.
double dyadic_block_seminorm(const CoefficientSeries& f, double alpha);

struct QpVerdict {
  double sup_weighted = 0.0;   // sup_{k >= 1} k b_k over the given range
  double decade_ratio = 0.0;   // max(k b_k) over the last decade / previous decade
  bool bounded = false;        // decade_ratio <= threshold
};

// Decision heuristic on a nonnegative, nonincreasing sequence b_0..b_{K}:
// sup k b_k is treated as finite when the running weighted maxima stop
// growing across the last two decades of k. Monotonicity violations beyond
// 1e-14 (relative to b_0) are domain errors; fewer than 100 entries raise
// truncation_error.
QpVerdict qp_coefficient_test(std::span<const double> b, double ratio_threshold = 1.1);

}  // namespace hilop
