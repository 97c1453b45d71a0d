#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hilop/measure.hpp"

namespace hilop {

// Radial form of the s-Carleson condition with optional logarithmic
// refinement: mu is (log_exponent)-logarithmic s-Carleson when
//   sup_t  mu([t,1)) log(e/(1-t))^log_exponent / (1-t)^s  <  infinity.
// The classifier probes the dyadic ladder t_i = 1 - 2^-i, i = 1..40.

struct ProbePoint {
  double t;
  double tail_mass;
  double ratio;  // tail * log(e/(1-t))^log_exponent / (1-t)^s
};

struct CarlesonReport {
  double s = 0.0;
  double log_exponent = 0.0;
  double constant_estimate = 0.0;  // max ratio over the ladder
  bool condition_met = false;      // deep ratios stopped growing
  double fitted_exponent = 0.0;    // slope of log tail against log(1-t)
  double fit_residual = 0.0;
  bool vanishing = false;          // ratios decay by >= 10x and settle
  std::vector<ProbePoint> probes;
};

inline constexpr std::size_t kProbeLadderDepth = 40;

/// Full ladder report for the given target condition.
CarlesonReport classify(const MeasureSpec& mu, double s, double log_exponent = 0.0);

/// Convenience accessors over classify().
double carleson_constant(const MeasureSpec& mu, double s, double log_exponent = 0.0);

struct ExponentFit {
  double fitted_exponent = 0.0;  // +inf when the tail dies faster than any power
  double residual = 0.0;
};

// Least-squares power fit tail(t) ~ (1-t)^e over the deepest positive probes.
ExponentFit exponent_estimate(const MeasureSpec& mu);

bool vanishing_test(const MeasureSpec& mu, double s, double log_exponent = 0.0);

// Which Carleson-type condition a given statement predicts.
enum class TheoremId { T2_1, T2_2, T2_3, T3_1, T3_2, T3_3, T3_4, Cor3_2, Qp };

const char* theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& name);  // throws domain_error

struct ConditionDescriptor {
  TheoremId theorem = TheoremId::T2_1;
  bool applicable = false;      // parameters inside the statement's range
  enum class Kind { equivalent, necessary } kind = Kind::equivalent;
  double s = 0.0;
  double log_exponent = 0.0;
  std::string note;
};

// gamma is only read by the general necessity statement (T3_1); the
// boundedness statements land in the derivative-weight space of order
// alpha-1 and need alpha >= 2.
ConditionDescriptor predicted_condition(TheoremId theorem, double alpha, double beta,
                                        double gamma = 0.0);

}  // namespace hilop
