#include "hilop/norms.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "hilop/errors.hpp"
#include "hilop/quadrature.hpp"

namespace hilop {

namespace {

// In-place radix-2 transform X_m = sum_j a_j exp(+2 pi i j m / n); n must be a
// power of two. Sign does not matter to callers that reduce over all m.
void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> w_len(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= w_len;
      }
    }
  }
}

double weighted_derivative_max(const CoefficientSeries& df, double alpha, const DiskGrid& grid,
                               bool parallel) {
  const std::size_t m_count = grid.angles;
  double best = 0.0;
  for (double r : grid.radii) {
    const double weight = std::pow(1.0 - r * r, alpha);
    double circle_max = 0.0;
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m_count);
    if (parallel) {
#pragma omp parallel for schedule(static) reduction(max : circle_max)
      for (std::ptrdiff_t m = 0; m < mm; ++m) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(m_count);
        circle_max = std::max(circle_max, std::abs(evaluate(df, std::polar(r, theta))));
      }
    } else {
      for (std::ptrdiff_t m = 0; m < mm; ++m) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(m_count);
        circle_max = std::max(circle_max, std::abs(evaluate(df, std::polar(r, theta))));
      }
    }
    best = std::max(best, weight * circle_max);
  }
  return best;
}

}  // namespace

double bloch_seminorm(const CoefficientSeries& f, double alpha, const DiskGrid& grid) {
  if (!(alpha > 0.0)) throw domain_error("weighted derivative norm needs alpha > 0");
  return weighted_derivative_max(derivative(f), alpha, grid, true);
}

double bloch_seminorm_serial(const CoefficientSeries& f, double alpha, const DiskGrid& grid) {
  if (!(alpha > 0.0)) throw domain_error("weighted derivative norm needs alpha > 0");
  return weighted_derivative_max(derivative(f), alpha, grid, false);
}

double bloch_norm(const CoefficientSeries& f, double alpha, const DiskGrid& grid) {
  const double head = f.coeff.empty() ? 0.0 : std::abs(f.coeff[0]);
  return head + bloch_seminorm(f, alpha, grid);
}

double growth_bound_check(const CoefficientSeries& f, double alpha, const DiskGrid& grid) {
  if (!(alpha > 0.0)) throw domain_error("growth check needs alpha > 0");
  double best = 0.0;
  for (double r : grid.radii) {
    double envelope;
    if (alpha < 1.0) envelope = 1.0;
    else if (alpha == 1.0) envelope = 1.0 - std::log1p(-r * r);
    else envelope = std::pow(1.0 - r * r, 1.0 - alpha);
    double circle_max = 0.0;
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(grid.angles);
#pragma omp parallel for schedule(static) reduction(max : circle_max)
    for (std::ptrdiff_t m = 0; m < mm; ++m) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                           static_cast<double>(grid.angles);
      circle_max = std::max(circle_max, std::abs(evaluate(f, std::polar(r, theta))));
    }
    best = std::max(best, circle_max / envelope);
  }
  return best;
}

double bergman_a1_norm(const CoefficientSeries& f, double rel_tol, std::size_t initial_angles) {
  if (f.coeff.empty()) return 0.0;
  initial_angles = std::bit_ceil(std::max<std::size_t>(initial_angles, 4));
  constexpr std::size_t kMaxAngles = 1u << 15;

  // Mean of |f| over a circle, doubling the sample count until stable. The
  // mean must settle well below the radial tolerance or the radial rule would
  // chase angular noise. The samples sit at roots of unity, so one transform
  // of the coefficients folded modulo the sample count evaluates the whole
  // circle in O(terms + samples log samples).
  const double angular_tol = 0.1 * rel_tol;
  auto circle_mean = [&](double rho) {
    double prev = -1.0;
    for (std::size_t m_count = initial_angles;; m_count *= 2) {
      std::vector<std::complex<double>> folded(m_count, {0.0, 0.0});
      double rk = 1.0;
      for (std::size_t k = 0; k < f.coeff.size(); ++k) {
        folded[k & (m_count - 1)] += f.coeff[k] * rk;
        rk *= rho;
      }
      fft_radix2(folded);
      double sum = 0.0;
      for (const auto& v : folded) sum += std::abs(v);
      const double mean = sum / static_cast<double>(m_count);
      if (prev >= 0.0 && std::abs(mean - prev) <= angular_tol * (std::abs(mean) + 1e-300))
        return mean;
      if (m_count >= kMaxAngles) return mean;
      prev = mean;
    }
  };

  auto radial = [&](double rho) { return 2.0 * rho * circle_mean(rho); };
  std::vector<double> breaks{0.0, 0.5, 0.75, 0.875, 0.9375};
  while (1.0 - breaks.back() > 1.0 / 4096.0) breaks.push_back(0.5 * (1.0 + breaks.back()));
  breaks.push_back(1.0);
  quad::AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  return quad::integrate_panels<double>(radial, breaks, opt);
}

double dyadic_block_seminorm(const CoefficientSeries& f, double alpha) {
  if (!(alpha > 0.0)) throw domain_error("dyadic block seminorm needs alpha > 0");
  const std::size_t degree = f.degree();
  double best = -1.0;
  std::size_t blocks = 0;
  for (std::size_t n = 0;; ++n) {
    const std::size_t lo = (std::size_t{1} << n) + 1;
    const std::size_t hi = std::size_t{1} << (n + 1);
    if (hi > degree) break;  // incomplete block: stop
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) {
      const double scaled =
          std::abs(f.coeff[k]) / std::pow(static_cast<double>(k), alpha - 1.0);
      sum += scaled * scaled;
    }
    best = std::max(best, sum);
    ++blocks;
  }
  if (blocks < 2)
    throw truncation_error("dyadic block seminorm needs at least two complete blocks", 5);
  return best;
}

QpVerdict qp_coefficient_test(std::span<const double> b, double ratio_threshold) {
  if (b.size() < 100)
    throw truncation_error("coefficient decay test needs at least 100 entries", 100);
  const double slack = 1e-14 * (1.0 + std::abs(b[0]));
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] < -slack) throw domain_error("coefficient decay test needs nonnegative entries");
    if (k > 0 && b[k] > b[k - 1] + slack)
      throw domain_error("coefficient decay test needs a nonincreasing sequence");
  }
  const std::size_t k_end = b.size() - 1;
  QpVerdict v;
  for (std::size_t k = 1; k <= k_end; ++k)
    v.sup_weighted = std::max(v.sup_weighted, static_cast<double>(k) * b[k]);

  auto window_max = [&](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t k = std::max<std::size_t>(lo, 1); k <= hi; ++k)
      m = std::max(m, static_cast<double>(k) * b[k]);
    return m;
  };
  const std::size_t d1_lo = k_end / 10;
  const std::size_t d0_lo = k_end / 100;
  const double last = window_max(d1_lo + 1, k_end);
  const double prev = window_max(d0_lo + 1, d1_lo);
  v.decade_ratio = prev > 0.0 ? last / prev : std::numeric_limits<double>::infinity();
  v.bounded = v.decade_ratio <= ratio_threshold;
  return v;
}

}  // namespace hilop
