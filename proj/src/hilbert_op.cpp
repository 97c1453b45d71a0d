#include "hilop/hilbert_op.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hilop/quadrature.hpp"

namespace hilop {

namespace {

// Sum of scale (k+1)^power x^k for k >= k_from (same contract as the series
// envelope helper; duplicated here to keep the translation units decoupled).
double envelope_sum(double scale, double power, double x, std::size_t k_from) {
  if (scale == 0.0) return 0.0;
  if (!(x < 1.0)) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double k = static_cast<double>(k_from);
  double term = scale * std::pow(k + 1.0, power) * std::pow(x, k);
  for (int iter = 0; iter < 4000 && term > 1e-320; ++iter) {
    sum += term;
    term *= x * std::pow((k + 2.0) / (k + 1.0), power);
    k += 1.0;
  }
  if (term > 1e-320) {
    const double ratio = x * std::pow((k + 2.0) / (k + 1.0), std::max(power, 0.0));
    if (ratio < 1.0) sum += term / (1.0 - ratio);
    else return std::numeric_limits<double>::infinity();
  }
  return sum;
}

// Stored-coefficient tail sum_{k >= k_from} |a_k| plus the envelope beyond.
double coefficient_tail_sum(const CoefficientSeries& f, std::size_t k_from) {
  double sum = 0.0;
  for (std::size_t k = k_from; k < f.coeff.size(); ++k) sum += std::abs(f.coeff[k]);
  const std::size_t env_from = std::max(k_from, f.coeff.size());
  sum += envelope_sum(f.env_scale, f.env_power, f.env_rate, env_from);
  return sum;
}

}  // namespace

HankelOperator::HankelOperator(MeasureSpec mu, double alpha, double moment_rel_tol)
    : gammas_(alpha), moments_(std::move(mu), moment_rel_tol) {}

void HankelOperator::ensure(std::size_t n_max, std::size_t k_max) {
  gammas_.ensure(n_max);
  moments_.ensure(n_max + k_max);
}

double HankelOperator::entry(std::size_t n, std::size_t k) {
  gammas_.ensure(n);
  moments_.ensure(n + k);
  return gammas_.value(n) * moments_[n + k];
}

std::vector<std::complex<double>> hankel_matvec_serial(
    const GammaRatioTable& gammas, const MomentCache& moments,
    const std::vector<std::complex<double>>& a, std::size_t n_out) {
  std::vector<std::complex<double>> b(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) acc += moments[n + k] * a[k];
    b[n] = gammas.value(n) * acc;
  }
  return b;
}

std::vector<std::complex<double>> hankel_matvec(const GammaRatioTable& gammas,
                                                const MomentCache& moments,
                                                const std::vector<std::complex<double>>& a,
                                                std::size_t n_out) {
  std::vector<std::complex<double>> b(n_out);
  const std::ptrdiff_t n_limit = static_cast<std::ptrdiff_t>(n_out);
  // Rows are independent; the inner loop order matches the serial kernel, so
  // results agree bitwise for any thread count.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < n_limit; ++n) {
    std::complex<double> acc{0.0, 0.0};
    const std::size_t un = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < a.size(); ++k) acc += moments[un + k] * a[k];
    b[un] = gammas.value(un) * acc;
  }
  return b;
}

double HankelOperator::column_weight_sum(std::size_t n_out, double r) {
  gammas_.ensure(n_out);
  moments_.ensure(n_out);
  double sum = 0.0;
  double rn = 1.0;
  for (std::size_t n = 0; n < n_out; ++n) {
    sum += gammas_.value(n) * moments_[n] * rn;
    rn *= r;
  }
  return sum;
}

OperatorApplication HankelOperator::apply(const CoefficientSeries& f, const ApplyOptions& opt) {
  if (opt.n_out == 0) throw domain_error("operator application needs n_out >= 1");
  if (f.coeff.empty()) throw domain_error("operator application needs a nonempty series");
  const bool automatic = opt.k_in == 0;
  std::size_t k_in = automatic ? f.coeff.size() : std::min(opt.k_in, f.coeff.size());

  const double r = f.r_max;
  const double alpha = gammas_.alpha();

  // Truncating the input at k coefficients changes each b_n by at most
  // c_n m_n sum_{j >= k} |a_j| (moments are nonincreasing); summing
  // c_n m_n r^n over the output range bounds the function-level gap.
  const double colsum = column_weight_sum(opt.n_out, r);
  double residual = coefficient_tail_sum(f, k_in) * colsum;
  if (residual > opt.tolerance) {
    // growing k_in only helps while stored coefficients remain; beyond that
    // the caller must rebuild the input with more terms
    std::size_t suggest = std::max<std::size_t>(k_in, 1);
    double r2 = residual;
    while (r2 > opt.tolerance && suggest < (1u << 21)) {
      suggest *= 2;
      r2 = coefficient_tail_sum(f, suggest) * colsum;
    }
    throw truncation_error("operator application: truncation residual above tolerance", suggest);
  }

  std::vector<std::complex<double>> a(f.coeff.begin(),
                                      f.coeff.begin() + static_cast<std::ptrdiff_t>(k_in));
  ensure(opt.n_out - 1, k_in - 1);

  OperatorApplication result;
  result.n_out = opt.n_out;
  result.k_in = k_in;
  result.output.r_max = r;
  result.output.coeff = opt.serial ? hankel_matvec_serial(gammas_, moments_, a, opt.n_out)
                                   : hankel_matvec(gammas_, moments_, a, opt.n_out);

  // Tail of the *output* series: |b_n| <= c_n m_n S_a for n >= n_out.
  const double s_a = coefficient_tail_sum(f, 0);
  double ratio_max = 0.0;
  for (std::size_t n = 0; n < gammas_.size(); n += std::max<std::size_t>(1, gammas_.size() / 512))
    ratio_max = std::max(ratio_max,
                         gammas_.value(n) / std::pow(static_cast<double>(n + 1), alpha - 1.0));
  moments_.ensure(opt.n_out);
  const double env_scale = s_a * moments_[opt.n_out] * 1.25 * ratio_max;
  result.output.env_scale = env_scale;
  result.output.env_power = alpha - 1.0;
  result.output.env_rate = 1.0;
  result.output.tail_bound = envelope_sum(env_scale, alpha - 1.0, r, opt.n_out);
  result.residual_bound = residual + result.output.tail_bound;
  return result;
}

std::complex<double> integral_apply(const MeasureSpec& mu, double alpha,
                                    const PointEvaluator& f, std::complex<double> z,
                                    double rel_tol) {
  if (!(alpha > 0.0)) throw domain_error("integral operator requires alpha > 0");
  if (!(std::abs(z) < 1.0)) throw domain_error("integral operator point outside the open disk");
  const std::complex<double> one{1.0, 0.0};
  return integrate_complex(
      mu,
      [&](double t, double) {
        return f(t) * std::exp(-alpha * std::log(one - t * z));
      },
      rel_tol);
}

EquivalenceResult equivalence_check(const MeasureSpec& mu, double alpha,
                                    const TestFamilyMember& f, const DiskGrid& grid,
                                    double r_cap, HankelOperator::ApplyOptions apply_opt) {
  HankelOperator op(mu, alpha);
  const auto application = op.apply(f.series, apply_opt);

  constexpr double kIntegralTol = 1e-9;
  EquivalenceResult res;
  double max_abs_integral = 0.0;
  auto fc = [&f](std::complex<double> w) { return f.closed_form(w); };
  for (double rho : grid.radii) {
    if (rho > r_cap + 1e-15) continue;
    for (std::size_t mth = 0; mth < grid.angles; ++mth) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(mth) /
                           static_cast<double>(grid.angles);
      const std::complex<double> z = std::polar(rho, theta);
      const auto matrix_side = evaluate(application.output, z);
      const auto integral_side = integral_apply(mu, alpha, fc, z, kIntegralTol);
      res.max_gap = std::max(res.max_gap, std::abs(matrix_side - integral_side));
      max_abs_integral = std::max(max_abs_integral, std::abs(integral_side));
      ++res.points;
    }
  }
  res.error_budget = application.residual_bound + 10.0 * kIntegralTol * max_abs_integral;
  return res;
}

std::complex<double> pairing_lhs(const MeasureSpec& mu, double alpha, const PointEvaluator& f,
                                 const PointEvaluator& g, double r, const PairingOptions& opt) {
  double w = opt.weight_exponent;
  if (w == PairingOptions::kPairingNaturalWeight) {
    if (!(alpha >= 2.0))
      throw domain_error("disk pairing with the natural weight needs alpha >= 2");
    w = alpha - 2.0;
  }
  if (!(w >= 0.0)) throw domain_error("disk pairing weight exponent must be nonnegative");
  if (!(r >= 0.0 && r < 1.0)) throw domain_error("disk pairing radius outside [0,1)");
  if (opt.angles == 0) throw domain_error("disk pairing needs at least one angle");

  const std::size_t m_count = opt.angles;
  auto angular_mean = [&](double rho) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < m_count; ++m) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                           static_cast<double>(m_count);
      const std::complex<double> z = std::polar(rho, theta);
      const std::complex<double> rz = r * z;
      acc += std::conj(integral_apply(mu, alpha, f, rz, opt.rel_tol)) * g(rz);
    }
    return acc / static_cast<double>(m_count);
  };

  auto radial = [&](double rho) -> std::complex<double> {
    const double weight = std::pow(1.0 - rho * rho, w);
    return 2.0 * rho * weight * angular_mean(rho);
  };
  quad::AdaptiveOptions qopt;
  qopt.rel_tol = opt.rel_tol;
  const std::vector<double> breaks{0.0, 0.5, 0.75, 0.875, 0.9375, 1.0};
  const std::complex<double> disk = quad::integrate_panels<std::complex<double>>(radial, breaks, qopt);
  return (w + 1.0) * disk;
}

std::complex<double> pairing_rhs(const MeasureSpec& mu, const PointEvaluator& f,
                                 const PointEvaluator& g, double r, double rel_tol) {
  if (!(r >= 0.0 && r < 1.0)) throw domain_error("disk pairing radius outside [0,1)");
  return integrate_complex(
      mu,
      [&](double t, double) { return std::conj(f({t, 0.0})) * g({r * r * t, 0.0}); },
      rel_tol);
}

double lower_bound_functional(const MeasureSpec& mu, double beta, double a, double r,
                              double rel_tol) {
  if (!(a >= 0.0 && a < 1.0)) throw domain_error("lower bound functional needs a in [0,1)");
  if (r < 0.0) r = a;
  if (!(r <= 1.0)) throw domain_error("lower bound functional needs r in [0,1]");
  const double lead = 1.0 - a * a;
  const double ar2 = a * r * r;
  auto kernel = [&](double t) {
    const double d = 1.0 - ar2 * t;
    const double q = lead / (d * d);
    return q * q;
  };
  auto weight = [&](double t) {
    if (beta < 1.0) return 1.0;
    if (beta == 1.0) return 1.0 - std::log1p(-a * t);
    return lead * std::pow(1.0 - a * t, -beta);
  };
  return integrate_tail(
      mu, a, [&](double t, double) { return kernel(t) * weight(t); }, rel_tol);
}

}  // namespace hilop
