#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "hilop/gamma_ratio.hpp"
#include "hilop/measure.hpp"
#include "hilop/series.hpp"

namespace hilop {

// Matrix side: entries c_n(alpha) * m_{n+k} where m_j is the j-th power
// moment of the measure. Applying the matrix to a coefficient vector gives
// the coefficient expansion of the transformed function.
struct OperatorApplication {
  CoefficientSeries output;
  std::size_t n_out = 0;
  std::size_t k_in = 0;
  // sup over |z| <= r_max of the gap between the true image and the stored
  // truncation, from the input's coefficient envelope.
  double residual_bound = 0.0;
};

class HankelOperator {
 public:
  HankelOperator(MeasureSpec mu, double alpha, double moment_rel_tol = 1e-12);

  const MeasureSpec& measure() const { return moments_.measure(); }
  double alpha() const { return gammas_.alpha(); }
  GammaRatioTable& gamma_table() { return gammas_; }
  MomentCache& moment_cache() { return moments_; }

  /// Builds both tables; call before sharing across threads.
  void ensure(std::size_t n_max, std::size_t k_max);

  /// c_n(alpha) m_{n+k}; extends the tables on demand.
  double entry(std::size_t n, std::size_t k);

  struct ApplyOptions {
    std::size_t n_out = kDefaultTruncation;  // output coefficients b_0..b_{n_out-1}
    std::size_t k_in = 0;                    // input coefficients used; 0 = automatic
    double tolerance = 1e-10;                // bound the truncation residual by this
    bool serial = false;                     // force the reference kernel
  };

  // Automatic k_in starts from the stored coefficients and extends through the
  // envelope until the residual bound meets the tolerance. A pinned k_in that
  // cannot meet it raises truncation_error carrying a size that would.
  OperatorApplication apply(const CoefficientSeries& f, const ApplyOptions& opt);
  OperatorApplication apply(const CoefficientSeries& f) { return apply(f, ApplyOptions{}); }

 private:
  GammaRatioTable gammas_;
  MomentCache moments_;

  double column_weight_sum(std::size_t n_out, double r) /*sum c_n m_n r^n*/;
};

// Reference and OpenMP matvec kernels, exposed for benchmarks and agreement
// tests: b_n = c_n sum_k m_{n+k} a_k with a fixed inner summation order, so
// both produce bitwise-identical output.
std::vector<std::complex<double>> hankel_matvec_serial(const GammaRatioTable& gammas,
                                                       const MomentCache& moments,
                                                       const std::vector<std::complex<double>>& a,
                                                       std::size_t n_out);
std::vector<std::complex<double>> hankel_matvec(const GammaRatioTable& gammas,
                                                const MomentCache& moments,
                                                const std::vector<std::complex<double>>& a,
                                                std::size_t n_out);

// Integral side: (I f)(z) = integral f(t) (1 - tz)^-alpha dmu(t).
using PointEvaluator = std::function<std::complex<double>(std::complex<double>)>;

std::complex<double> integral_apply(const MeasureSpec& mu, double alpha,
                                    const PointEvaluator& f, std::complex<double> z,
                                    double rel_tol = 1e-9);

struct EquivalenceResult {
  double max_gap = 0.0;      // max |H f - I f| over admissible grid points
  double error_budget = 0.0; // truncation residual + quadrature allowance
  std::size_t points = 0;
};

// Compares the matrix image (series evaluation) against the integral image
// (closed form + quadrature) over grid points with |z| <= r_cap.
EquivalenceResult equivalence_check(const MeasureSpec& mu, double alpha,
                                    const TestFamilyMember& f, const DiskGrid& grid,
                                    double r_cap = 0.9,
                                    HankelOperator::ApplyOptions apply_opt = {});

// Weighted disk pairing against the integral image:
//   (w+1) integral_D conj(If(rz)) g(rz) (1-|z|^2)^w dA(z),  dA normalized.
// With the natural weight w = alpha-2 this equals the measure-side pairing
// integral conj(f(t)) g(r^2 t) dmu(t) exactly; the reproducing normalization
// (w+1) is what makes the identity hold with constant 1. Other nonnegative
// weights are accepted for exploration but carry no exactness claim: the
// weight w = alpha-1 that appears in duality arguments pairs exactly only
// with a kernel of order alpha+1, not alpha, and the offset is left visible.
struct PairingOptions {
  double weight_exponent = kPairingNaturalWeight;
  std::size_t angles = 256;
  double rel_tol = 1e-10;
  static constexpr double kPairingNaturalWeight = -1.0;  // sentinel: use alpha-2
};

std::complex<double> pairing_lhs(const MeasureSpec& mu, double alpha, const PointEvaluator& f,
                                 const PointEvaluator& g, double r,
                                 const PairingOptions& opt = {});

std::complex<double> pairing_rhs(const MeasureSpec& mu, const PointEvaluator& f,
                                 const PointEvaluator& g, double r, double rel_tol = 1e-9);

// Tail functional driving the lower-bound sweeps:
//   integral_{[a,1)} ((1-a^2) / (1 - a r^2 t)^2)^2  w_beta(a,t) dmu(t)
// with w_beta = 1 (beta < 1), log(e/(1-at)) (beta = 1),
// (1-a^2)(1-at)^-beta (beta > 1). r defaults to a.
double lower_bound_functional(const MeasureSpec& mu, double beta, double a, double r = -1.0,
                              double rel_tol = 1e-10);

}  // namespace hilop
