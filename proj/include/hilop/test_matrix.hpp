#pragma once

#include <string>
#include <vector>

#include "hilop/measure.hpp"
#include "hilop/series.hpp"

namespace hilop {

// The shipped measure matrix: twelve measures spanning atoms, the density
// family across its exponent range, logarithmic refinements, and a mixture.
// Consistency sweeps and the series/integral agreement suite both draw from
// this list.
struct MatrixMeasure {
  std::string label;
  MeasureSpec mu;
};

const std::vector<MatrixMeasure>& measure_test_matrix();

// One series/integral agreement case per matrix measure. Each case names the
// route that admits it:
//   any-exponent  the measure is t-Carleson for some t > 0 and the input lies
//                 in a space with weight exponent <= 1
//   weighted      the measure is beta-Carleson and the input has weight
//                 exponent beta
//   mean-p        integrability route at mean exponent p; the p in (1,2) leg
//                 uses the exponent (2-(p-1)^2)/p, which is stated by analogy
//                 rather than derived in detail, so cases riding on it say so
struct EquivalenceCase {
  std::string label;
  MeasureSpec mu;
  double alpha;
  Family family;
  double parameter;
  double order;  // weight exponent for power_beta inputs
  double beta;   // source-space exponent, drives the convergence gate
  std::string route;
};

const std::vector<EquivalenceCase>& equivalence_test_matrix();

}  // namespace hilop
