#pragma once

#include <cstddef>
#include <vector>

#include "hilop/errors.hpp"

namespace hilop {

// Table of c_n(alpha) = Gamma(n+alpha) / (n! Gamma(alpha)), alpha > 0.
// Built by the product recurrence c_n = c_{n-1} (n-1+alpha)/n, which is
// numerically benign: every factor is positive and close to 1 for large n.
// A parallel log-space table is kept so that downstream code can work with
// exponents directly; the product table saturates to +inf past ~1e300 while
// the log table stays valid.
class GammaRatioTable {
 public:
  explicit GammaRatioTable(double alpha, std::size_t n_max = 0);

  double alpha() const { return alpha_; }
  std::size_t size() const { return values_.size(); }
  void ensure(std::size_t n);

  double value(std::size_t n) const;      // c_n(alpha), +inf once overflowed
  double log_value(std::size_t n) const;  // log c_n(alpha), always finite

  const std::vector<double>& values() const { return values_; }

 private:
  double alpha_;
  std::vector<double> values_;
  std::vector<double> logs_;
  double log_carry_ = 0.0;  // Kahan compensation for the running log sum
};

/// c_n(alpha) without keeping a table.
double gamma_ratio(double alpha, std::size_t n);

/// Gamma(alpha) c_n(alpha) / n^(alpha-1), which tends to 1 as n grows. The
/// quotient is evaluated in log space, so it stays finite for any n >= 1.
/// The table overload is O(1) per call and is what index sweeps should use.
double stirling_check(double alpha, std::size_t n);
double stirling_check(const GammaRatioTable& table, std::size_t n);

}  // namespace hilop
