#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hilop/carleson.hpp"
#include "hilop/measure.hpp"
#include "hilop/norms.hpp"

namespace hilop {

struct SweepPoint {
  double x;
  double value;
};

struct HarnessOptions {
  // Growth-exponent verdict: the tail functional counts as bounded when its
  // fitted growth exponent is at most this. Critical measures fit slopes in
  // [-0.01, 0.01] on the default sweep while the slowest unbounded profile of
  // interest, (1-t)^0.9 dt against the order-2 kernel, fits 0.09; 0.05 splits
  // the two regimes with even margin. The fit skips parameters below 0.95:
  // the shallow end biases the slope low by ~0.05 at those boundary cases.
  double growth_threshold = 0.05;
  std::vector<double> a_sweep = {0.9, 0.99, 0.999, 0.9999};
  // Parameters for operator-image norm estimates; capped below 0.999 so the
  // input truncation stays moderate.
  std::vector<double> norm_params = {0.9, 0.99, 0.999};
  std::size_t n_out = 1024;
  double apply_tolerance = 1e-6;
};

// One boundedness statement checked three ways: the Carleson-type classifier
// on the predicted condition, the growth of the tail functional along an
// a-sweep, and weighted-derivative norms of operator images of the
// statement's test family. The report is deterministic for fixed inputs
// except for runtime_ms.
struct HarnessReport {
  std::string theorem;
  MeasureSpec measure;
  double alpha = 0.0;
  double beta = 0.0;
  ConditionDescriptor predicted;
  GateResult gate{false, 0.0};
  CarlesonReport classification;
  bool classifier_satisfied = false;
  std::vector<SweepPoint> functional_sweep;
  double growth_exponent_raw = 0.0;  // fitted slope of log F against log 1/(1-a),
                                     // deep sweep points only (x >= 0.95)
  double growth_exponent = 0.0;      // clamped at zero
  double growth_fit_residual = 0.0;
  bool functional_bounded = false;
  std::vector<SweepPoint> norm_sweep;  // (family parameter, output norm in order alpha-1)
  bool consistent = false;  // classifier verdict == functional verdict
  double runtime_ms = 0.0;
};

HarnessReport run_boundedness_harness(TheoremId theorem, const MeasureSpec& mu, double alpha,
                                      double beta, const HarnessOptions& opt = {});

struct CompactnessReport {
  std::string theorem;
  MeasureSpec measure;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<SweepPoint> proxy;  // ladder a_i = 1 - 2^-i
  double decay_factor = 0.0;      // proxy(first) / proxy(last)
  bool tends_to_zero = false;     // decayed by at least 10x
  bool vanishing_classified = false;
  bool consistent = false;
  std::string note;  // flags the source-space ambiguity in the compactness statements
  double runtime_ms = 0.0;
};

CompactnessReport run_compactness_proxy(TheoremId theorem, const MeasureSpec& mu, double alpha,
                                        double beta);

// Necessity statement: a bounded operator forces the predicted Carleson
// condition. The dyadic block seminorm of the image lower-bounds the tail
// ratio at the block 2^j ~ 1/(1-lambda); if the classifier rejects the
// condition, the block sweep must blow up.
struct NecessityReport {
  std::string theorem;
  MeasureSpec measure;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  ConditionDescriptor predicted;
  CarlesonReport classification;
  bool classifier_satisfied = false;
  std::vector<SweepPoint> block_sweep;  // (lambda, block seminorm of the image)
  double block_growth_exponent = 0.0;
  bool blocks_bounded = false;
  bool consistent = false;  // classifier ok, or blocks blow up
  double runtime_ms = 0.0;
};

struct NecessityOptions {
  std::size_t ladder_min = 2;  // lambda = 1 - 2^-i over [ladder_min, ladder_max]
  std::size_t ladder_max = 8;
  std::size_t n_out = 2048;
  double growth_threshold = 0.05;
};

NecessityReport run_necessity_harness(const MeasureSpec& mu, double alpha, double beta,
                                      double gamma, const NecessityOptions& opt = {});

// Coefficient-decay statement: boundedness into the Dirichlet-type scale
// forces an alpha-Carleson measure. The first matrix column c_n m_n carries
// the signal: sup n c_n m_n stays finite exactly when the tail obeys the
// alpha-power law.
struct QpReport {
  MeasureSpec measure;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t n_max = 0;
  ConditionDescriptor predicted;
  QpVerdict verdict;
  CarlesonReport classification;
  bool classifier_satisfied = false;
  bool consistent = false;
  double runtime_ms = 0.0;
};

QpReport run_qp_harness(const MeasureSpec& mu, double alpha, double beta = 0.5,
                        std::size_t n_max = 100000);

// JSON renderings (numbers survive round-trips; layout is stable).
nlohmann::json to_json(const CarlesonReport& rep);
nlohmann::json to_json(const ConditionDescriptor& d);
nlohmann::json to_json(const HarnessReport& rep);
nlohmann::json to_json(const CompactnessReport& rep);
nlohmann::json to_json(const NecessityReport& rep);
nlohmann::json to_json(const QpReport& rep);

}  // namespace hilop
