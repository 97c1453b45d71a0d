#include "hilop/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hilop/gamma_ratio.hpp"

namespace hilop {

namespace {

constexpr double kRadiusSlack = 1e-12;

// Sum of scale (k+1)^power x^k for k >= k_from, 0 <= x < 1. Term-by-term until
// the terms die, then a geometric remainder using a ratio valid from there on.
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

void finish_envelope(CoefficientSeries& s, double scale, double power, double rate) {
  s.env_scale = scale;
  s.env_power = power;
  s.env_rate = rate;
  s.tail_bound = envelope_sum(scale, power, rate * s.r_max, s.coeff.size());
}

}  // namespace

std::complex<double> evaluate_unchecked(const CoefficientSeries& f, std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = f.coeff.size(); i-- > 0;) acc = acc * z + f.coeff[i];
  return acc;
}

std::complex<double> evaluate(const CoefficientSeries& f, std::complex<double> z) {
  if (std::abs(z) > f.r_max + kRadiusSlack)
    throw domain_error("series evaluation outside certified radius");
  return evaluate_unchecked(f, z);
}

CoefficientSeries derivative(const CoefficientSeries& f) {
  CoefficientSeries d;
  d.r_max = f.r_max;
  if (f.coeff.size() > 1) {
    d.coeff.resize(f.coeff.size() - 1);
    for (std::size_t k = 0; k + 1 < f.coeff.size(); ++k)
      d.coeff[k] = static_cast<double>(k + 1) * f.coeff[k + 1];
  } else {
    d.coeff = {std::complex<double>{0.0, 0.0}};
  }
  if (f.env_scale > 0.0) {
    // |(k+1) a_{k+1}| <= scale rate (k+1)^(power+1) (1+1/(k+1))^power rate^k
    const double bump = std::pow(2.0, std::max(f.env_power, 0.0));
    finish_envelope(d, f.env_scale * f.env_rate * bump, f.env_power + 1.0, f.env_rate);
  }
  return d;
}

DiskGrid DiskGrid::dyadic(std::size_t i_max, std::size_t angles) {
  DiskGrid g;
  g.angles = angles;
  g.radii.push_back(0.0);
  for (std::size_t i = 1; i <= i_max; ++i) g.radii.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(i)));
  return g;
}

DiskGrid DiskGrid::custom(std::vector<double> radii, std::size_t angles) {
  for (double r : radii)
    if (!(r >= 0.0 && r < 1.0)) throw domain_error("grid radius outside [0,1)");
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  if (radii.empty()) throw domain_error("grid needs at least one radius");
  DiskGrid g;
  g.radii = std::move(radii);
  g.angles = angles;
  return g;
}

std::complex<double> TestFamilyMember::closed_form(std::complex<double> z) const {
  using cd = std::complex<double>;
  const double a = parameter;
  switch (family) {
    case Family::constant_one:
      return cd{1.0, 0.0};
    case Family::power_beta:
      return (1.0 - a * a) * std::exp(-order * std::log(cd{1.0, 0.0} - a * z));
    case Family::log_e:
      return cd{1.0, 0.0} - std::log(cd{1.0, 0.0} - a * z);
    case Family::log_sq: {
      const double norm = std::log(2.0 / (1.0 - a * a));
      const cd l = std::log(2.0) - std::log(cd{1.0, 0.0} - a * z);
      return l * l / norm;
    }
    case Family::bergman_peak: {
      const cd w = cd{1.0, 0.0} - a * z;
      const double s = (1.0 - a * a) * (1.0 - a * a);
      return s / (w * w * w * w);
    }
  }
  throw domain_error("unknown family");
}

TestFamilyMember make_family(Family family, double parameter, double order,
                             std::size_t n_terms) {
  if (n_terms == 0) throw domain_error("family needs at least one coefficient");
  TestFamilyMember m;
  m.family = family;
  m.parameter = parameter;
  m.order = order;
  auto& s = m.series;
  s.coeff.resize(n_terms, {0.0, 0.0});

  auto need_param = [&](const char* what) {
    if (!(parameter >= 0.0 && parameter < 1.0)) throw domain_error(what);
  };

  switch (family) {
    case Family::constant_one:
      s.coeff.assign(1, {1.0, 0.0});
      break;

    case Family::power_beta: {
      need_param("power family parameter must lie in [0,1)");
      if (!(order > 0.0)) throw domain_error("power family order must be positive");
      GammaRatioTable c(order, n_terms - 1);
      const double lead = 1.0 - parameter * parameter;
      double pk = 1.0;
      double ratio_max = 0.0;
      for (std::size_t k = 0; k < n_terms; ++k) {
        s.coeff[k] = lead * c.value(k) * pk;
        ratio_max = std::max(ratio_max,
                             c.value(k) / std::pow(static_cast<double>(k + 1), order - 1.0));
        pk *= parameter;
      }
      // 1.25 covers the ratio's approach to its limit beyond the built range
      finish_envelope(s, lead * 1.25 * ratio_max, order - 1.0, parameter);
      break;
    }

    case Family::log_e: {
      need_param("log family parameter must lie in [0,1)");
      s.coeff[0] = {1.0, 0.0};
      double pk = parameter;
      for (std::size_t k = 1; k < n_terms; ++k) {
        s.coeff[k] = pk / static_cast<double>(k);
        pk *= parameter;
      }
      finish_envelope(s, parameter > 0.0 ? 1.0 : 0.0, 0.0, parameter);
      break;
    }

    case Family::log_sq: {
      need_param("log-square family parameter must lie in [0,1)");
      if (parameter == 0.0) throw domain_error("log-square family needs parameter > 0");
      const double norm = std::log(2.0 / (1.0 - parameter * parameter));
      const double log2 = std::log(2.0);
      s.coeff[0] = log2 * log2 / norm;
      double pk = parameter;
      double harmonic = 0.0;  // H_{k-1}
      double ratio_max = 0.0;
      for (std::size_t k = 1; k < n_terms; ++k) {
        const double dk = static_cast<double>(k);
        const double val = (2.0 * log2 + 2.0 * harmonic) / (dk * norm);
        s.coeff[k] = val * pk;
        ratio_max = std::max(ratio_max, val);  // val a^-k |a_k|; decreasing for k >= 2
        harmonic += 1.0 / dk;
        pk *= parameter;
      }
      finish_envelope(s, ratio_max, 0.0, parameter);
      break;
    }

    case Family::bergman_peak: {
      need_param("peak family parameter must lie in [0,1)");
      GammaRatioTable c(4.0, n_terms - 1);
      const double lead = (1.0 - parameter * parameter) * (1.0 - parameter * parameter);
      double pk = 1.0;
      double ratio_max = 0.0;
      for (std::size_t k = 0; k < n_terms; ++k) {
        s.coeff[k] = lead * c.value(k) * pk;
        ratio_max = std::max(ratio_max,
                             c.value(k) / std::pow(static_cast<double>(k + 1), 3.0));
        pk *= parameter;
      }
      finish_envelope(s, lead * 1.25 * ratio_max, 3.0, parameter);
      break;
    }
  }
  return m;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::constant_one: return "one";
    case Family::power_beta: return "power";
    case Family::log_e: return "log";
    case Family::log_sq: return "logsq";
    case Family::bergman_peak: return "peak";
  }
  return "?";
}

}  // namespace hilop
