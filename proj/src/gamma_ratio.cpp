#include "hilop/gamma_ratio.hpp"

#include <cmath>
#include <limits>

namespace hilop {

GammaRatioTable::GammaRatioTable(double alpha, std::size_t n_max) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw domain_error("gamma ratio requires alpha > 0");
  values_.push_back(1.0);
  logs_.push_back(0.0);
  ensure(n_max);
}

void GammaRatioTable::ensure(std::size_t n) {
  while (values_.size() <= n) {
    const std::size_t k = values_.size();
    const double dk = static_cast<double>(k);
    const double factor = (dk - 1.0 + alpha_) / dk;
    double next = values_.back() * factor;
    if (!(next < 1e300)) next = std::numeric_limits<double>::infinity();
    values_.push_back(next);
    // log1p((alpha-1)/k) keeps the term accurate when the factor is near 1
    const double term = std::log1p((alpha_ - 1.0) / dk);
    const double y = term - log_carry_;
    const double t = logs_.back() + y;
    log_carry_ = (t - logs_.back()) - y;
    logs_.push_back(t);
  }
}

double GammaRatioTable::value(std::size_t n) const {
  if (n >= values_.size()) throw domain_error("gamma ratio table: index beyond built range");
  return values_[n];
}

double GammaRatioTable::log_value(std::size_t n) const {
  if (n >= logs_.size()) throw domain_error("gamma ratio table: index beyond built range");
  return logs_[n];
}

double gamma_ratio(double alpha, std::size_t n) {
  GammaRatioTable table(alpha, n);
  return table.value(n);
}

double stirling_check(double alpha, std::size_t n) {
  GammaRatioTable table(alpha, n);
  return stirling_check(table, n);
}

double stirling_check(const GammaRatioTable& table, std::size_t n) {
  if (n == 0) throw domain_error("stirling check needs n >= 1");
  const double alpha = table.alpha();
  const double log_ratio =
      std::lgamma(alpha) + table.log_value(n) - (alpha - 1.0) * std::log(static_cast<double>(n));
  return std::exp(log_ratio);
}

}  // namespace hilop
