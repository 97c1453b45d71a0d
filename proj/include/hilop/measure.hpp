#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "hilop/errors.hpp"

namespace hilop {

// Finite positive Borel measure on [0, 1), built from three closed shapes:
//   atomic    sum of point masses w_j at t_j in [0, 1)
//   density   (1-t)^p log(e/(1-t))^q dt with p > -1
//   mixture   positive combination of the above, recursively
// All logarithmic weights in this library use the log(e/(1-t)) convention.
struct MeasureSpec {
  struct Atom {
    double location;
    double weight;
  };
  struct DensityPart {
    double p;
    double q;
  };
  enum class Kind { atomic, density, mixture };

  Kind kind = Kind::atomic;
  std::vector<Atom> atoms;                              // kind == atomic
  DensityPart density{0.0, 0.0};                        // kind == density
  std::vector<std::pair<double, MeasureSpec>> parts;    // kind == mixture

  // Atoms must sit in [0, 1 - 1e-12] with positive weight.
  static MeasureSpec atomic(std::vector<Atom> atoms);
  static MeasureSpec make_density(double p, double q = 0.0);
  static MeasureSpec lebesgue() { return make_density(0.0, 0.0); }
  // Scales must be positive; parts are validated recursively.
  static MeasureSpec mixture(std::vector<std::pair<double, MeasureSpec>> parts);
};

// Flattened view: every leaf with its accumulated scale.
struct MeasureLeaves {
  std::vector<std::pair<double, MeasureSpec::Atom>> atoms;        // (scale*weight folded in)
  std::vector<std::pair<double, MeasureSpec::DensityPart>> densities;
};
MeasureLeaves flatten(const MeasureSpec& mu);

/// j-th power moment  integral t^j dmu(t).
double moment(const MeasureSpec& mu, std::size_t j, double rel_tol = 1e-12);

/// Tail mass mu([t, 1)); atoms at t are included.
double tail(const MeasureSpec& mu, double t, double rel_tol = 1e-12);

/// integral f(t) dmu(t). f receives (t, 1-t); the complement is exact near 1.
double integrate(const MeasureSpec& mu, const std::function<double(double, double)>& f,
                 double rel_tol = 1e-10);

/// Complex-valued variant used by the integral-operator kernels.
std::complex<double> integrate_complex(
    const MeasureSpec& mu,
    const std::function<std::complex<double>(double, double)>& f, double rel_tol = 1e-10);

/// Same as integrate but only over [t_lo, 1).
double integrate_tail(const MeasureSpec& mu, double t_lo,
                      const std::function<double(double, double)>& f, double rel_tol = 1e-10);

enum class MeasureWeight {
  log_e,                 // dnu = log(e/(1-t)) dmu
  power_one_minus_beta,  // dnu = (1-t)^(1-beta) dmu
};

// Reweighted measure. The density family is closed under both weights:
// log_e bumps q by one, power_one_minus_beta shifts p by 1-beta. Atom weights
// are rescaled in place. Negative resulting density exponents <= -1 are
// rejected (the reweighted measure would be infinite).
MeasureSpec weighted_transform(const MeasureSpec& mu, MeasureWeight weight, double beta = 0.0);

struct GateResult {
  bool admissible;
  double value;  // the deciding integral when finite, +inf otherwise
};

// Admissibility gate for kernel exponent beta:
//   beta < 1  total mass          beta = 1  integral log(e/(1-t)) dmu
//   beta > 1  integral (1-t)^(1-beta) dmu
// Finiteness is decided analytically from the density exponents; quadrature
// only runs for measures already known to be finite. A density leaf
// (1-t)^A log(e/(1-t))^B dt is finite iff A > -1, or A = -1 and B < -1.
GateResult convergence_gate(const MeasureSpec& mu, double beta, double rel_tol = 1e-10);

// Shared power-moment table for one measure. Values below 1e-300 clamp to 0.
// ensure() grows geometrically and is not thread-safe; build the table before
// sharing it across threads.
class MomentCache {
 public:
  explicit MomentCache(MeasureSpec mu, double rel_tol = 1e-12);

  const MeasureSpec& measure() const { return mu_; }
  std::size_t size() const { return values_.size(); }

  void ensure(std::size_t j_max);
  double operator[](std::size_t j) const;  // throws domain_error beyond size()

  const std::vector<double>& values() const { return values_; }

 private:
  MeasureSpec mu_;
  MeasureLeaves leaves_;
  double rel_tol_;
  std::vector<double> values_;

  void build_range(std::size_t from, std::size_t to);         // OpenMP over j
  void build_range_serial(std::size_t from, std::size_t to);  // reference path
  friend struct MomentCacheTestAccess;
};

// Reference/parallel kernels behind MomentCache, exposed for the benchmark
// and the agreement tests.
std::vector<double> moment_batch(const MeasureSpec& mu, std::size_t j_begin, std::size_t j_end,
                                 double rel_tol = 1e-12);
std::vector<double> moment_batch_serial(const MeasureSpec& mu, std::size_t j_begin,
                                        std::size_t j_end, double rel_tol = 1e-12);

}  // namespace hilop
