#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "hilop/errors.hpp"

namespace hilop {

inline constexpr double kDefaultRMax = 1.0 - 1.0 / 1024.0;  // 1 - 2^-10
inline constexpr std::size_t kDefaultTruncation = 4096;

// Truncated Taylor series sum a_k z^k, k <= degree(). tail_bound dominates the
// discarded tail sup_{|z| <= r_max} |sum_{k > degree} a_k z^k|; it is zero for
// exact polynomials. Evaluation outside |z| <= r_max is rejected, since the
// truncation error is only certified inside.
struct CoefficientSeries {
  std::vector<std::complex<double>> coeff;
  double r_max = kDefaultRMax;
  double tail_bound = 0.0;

  // Envelope |a_k| <= scale * (k+1)^power * rate^k for k > degree(), used to
  // propagate truncation residuals through operator application. Zero scale
  // means the series is exactly the stored polynomial.
  double env_scale = 0.0;
  double env_power = 0.0;
  double env_rate = 0.0;

  std::size_t degree() const { return coeff.empty() ? 0 : coeff.size() - 1; }
};

/// Horner evaluation; throws domain_error for |z| > r_max.
std::complex<double> evaluate(const CoefficientSeries& f, std::complex<double> z);

/// Horner evaluation without the disk check. Callers certify their own error.
std::complex<double> evaluate_unchecked(const CoefficientSeries& f, std::complex<double> z);

/// Coefficient-shifted derivative; the tail bound is inflated accordingly.
CoefficientSeries derivative(const CoefficientSeries& f);

// Radial/angular evaluation grid: radii {0} followed by the dyadic ladder
// 1 - 2^-i, i = 1..i_max, each circle sampled at `angles` equispaced points.
struct DiskGrid {
  std::vector<double> radii;
  std::size_t angles = 256;

  static DiskGrid dyadic(std::size_t i_max = 10, std::size_t angles = 256);
  static DiskGrid custom(std::vector<double> radii, std::size_t angles);
  double max_radius() const { return radii.empty() ? 0.0 : radii.back(); }
};

enum class Family {
  constant_one,  // f = 1
  power_beta,    // f(z) = (1-l^2) (1-lz)^-beta            parameter l, order beta
  log_e,         // f(z) = log(e/(1-az)) = 1 - log(1-az)   parameter a
  log_sq,        // f(z) = log(2/(1-az))^2 / log(2/(1-a^2)) parameter a
  bergman_peak,  // g(z) = (1-a^2)^2 (1-az)^-4             parameter a
};

// A family member carries both its truncated coefficients and a closed-form
// evaluator. The closed form is exact on the whole disk and is what the
// integral-operator side consumes; the coefficients feed the matrix side.
struct TestFamilyMember {
  Family family = Family::constant_one;
  double parameter = 0.0;  // l or a above
  double order = 0.0;      // beta for power_beta
  CoefficientSeries series;

  std::complex<double> closed_form(std::complex<double> z) const;
};

/// Builds the truncated series (length n_terms coefficients) plus envelope.
TestFamilyMember make_family(Family family, double parameter, double order = 0.0,
                             std::size_t n_terms = kDefaultTruncation);

std::string family_name(Family family);

}  // namespace hilop
