#include <doctest.h>

#include <cmath>
#include <limits>

#include "hilop/carleson.hpp"
#include "hilop/measure.hpp"

using namespace hilop;

TEST_CASE("density families fit their tail exponent") {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    const CarlesonReport rep = classify(MeasureSpec::make_density(p), p + 1.0);
    INFO("p=", p);
    CHECK(rep.condition_met);
    CHECK(rep.fitted_exponent == doctest::Approx(p + 1.0).epsilon(0.05 / (p + 1.0)));
    CHECK(rep.constant_estimate == doctest::Approx(1.0 / (p + 1.0)).epsilon(0.05));
    CHECK_FALSE(rep.vanishing);
    CHECK(rep.fit_residual < 0.05);
  }
}

TEST_CASE("probe ladder structure") {
  const CarlesonReport rep = classify(MeasureSpec::lebesgue(), 1.0);
  REQUIRE(rep.probes.size() == kProbeLadderDepth);
  CHECK(rep.probes.front().t == 0.5);
  for (std::size_t i = 1; i < rep.probes.size(); ++i) {
    CHECK(rep.probes[i].t > rep.probes[i - 1].t);
    CHECK(rep.probes[i].tail_mass <= rep.probes[i - 1].tail_mass * (1.0 + 1e-12));
  }
  // ratio is recomputable from the stored tail
  const auto& p7 = rep.probes[6];
  CHECK(p7.ratio == doctest::Approx(p7.tail_mass / (1.0 - p7.t)).epsilon(1e-12));
}

TEST_CASE("stricter exponents are rejected, weaker ones absorbed") {
  const MeasureSpec mu = MeasureSpec::make_density(1.0);  // tail (1-t)^2/2
  CHECK(classify(mu, 2.0).condition_met);
  CHECK_FALSE(classify(mu, 2.5).condition_met);
  const CarlesonReport weaker = classify(mu, 1.5);
  CHECK(weaker.condition_met);
  CHECK(weaker.vanishing);  // ratio ~ (1-t)^0.5 decays through the ladder
}

TEST_CASE("logarithmic refinement detection") {
  const CarlesonReport crit = classify(MeasureSpec::make_density(1.0, -1.0), 2.0, 1.0);
  CHECK(crit.condition_met);
  CHECK_FALSE(crit.vanishing);
  CHECK(crit.constant_estimate == doctest::Approx(0.5).epsilon(0.05));

  const CarlesonReport vane = classify(MeasureSpec::make_density(1.0, -2.0), 2.0, 1.0);
  CHECK(vane.condition_met);
  CHECK(vane.vanishing);

  // without the log factor the same measures are plainly 2-Carleson
  CHECK(classify(MeasureSpec::make_density(1.0, -1.0), 2.0).condition_met);
  CHECK(vanishing_test(MeasureSpec::make_density(1.0, -2.0), 2.0, 1.0));
}

TEST_CASE("atoms satisfy every exponent with a dying tail") {
  const CarlesonReport rep = classify(MeasureSpec::atomic({{0.5, 1.0}}), 5.0);
  CHECK(rep.condition_met);
  CHECK(rep.vanishing);
  CHECK(std::isfinite(rep.constant_estimate));
  CHECK(exponent_estimate(MeasureSpec::atomic({{0.5, 1.0}})).fitted_exponent ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("power-law estimate and accessors") {
  const ExponentFit fit = exponent_estimate(MeasureSpec::make_density(1.0));
  CHECK(fit.fitted_exponent == doctest::Approx(2.0).epsilon(0.01));
  CHECK(carleson_constant(MeasureSpec::lebesgue(), 1.0) ==
        classify(MeasureSpec::lebesgue(), 1.0).constant_estimate);
  CHECK_THROWS_AS(classify(MeasureSpec::lebesgue(), 0.0), domain_error);
  CHECK_THROWS_AS(classify(MeasureSpec::lebesgue(), -2.0), domain_error);
}

TEST_CASE("scaling the measure scales only the constant") {
  const MeasureSpec mu = MeasureSpec::make_density(0.5);
  const MeasureSpec scaled = MeasureSpec::mixture({{3.0, mu}});
  const CarlesonReport base = classify(mu, 1.5);
  const CarlesonReport big = classify(scaled, 1.5);
  CHECK(big.constant_estimate == doctest::Approx(3.0 * base.constant_estimate).epsilon(1e-10));
  CHECK(big.fitted_exponent == doctest::Approx(base.fitted_exponent).epsilon(1e-12));
  CHECK(big.condition_met == base.condition_met);
}

TEST_CASE("statement names round-trip") {
  for (TheoremId id : {TheoremId::T2_1, TheoremId::T2_2, TheoremId::T2_3, TheoremId::T3_1,
                       TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_4, TheoremId::Cor3_2,
                       TheoremId::Qp})
    CHECK(theorem_from_name(theorem_name(id)) == id);
  CHECK(std::string(theorem_name(TheoremId::T2_1)) == "T2.1");
  CHECK(std::string(theorem_name(TheoremId::Cor3_2)) == "Cor3.2");
  CHECK_THROWS_AS(theorem_from_name("T9.9"), domain_error);
}

TEST_CASE("predicted conditions across the statement table") {
  // order-2 tail for the small-weight range
  const ConditionDescriptor t21 = predicted_condition(TheoremId::T2_1, 2.0, 0.5);
  CHECK(t21.applicable);
  CHECK(t21.kind == ConditionDescriptor::Kind::equivalent);
  CHECK(t21.s == 2.0);
  CHECK(t21.log_exponent == 0.0);
  CHECK_FALSE(predicted_condition(TheoremId::T2_1, 1.5, 0.5).applicable);
  CHECK_FALSE(predicted_condition(TheoremId::T2_1, 2.0, 1.0).applicable);

  // logarithmic refinement at the unit weight
  const ConditionDescriptor t22 = predicted_condition(TheoremId::T2_2, 2.0, 1.0);
  CHECK(t22.applicable);
  CHECK(t22.s == 2.0);
  CHECK(t22.log_exponent == 1.0);
  CHECK_FALSE(predicted_condition(TheoremId::T2_2, 2.0, 0.9).applicable);

  // shifted exponent above the unit weight
  const ConditionDescriptor t23 = predicted_condition(TheoremId::T2_3, 2.0, 2.0);
  CHECK(t23.applicable);
  CHECK(t23.s == 3.0);
  CHECK(predicted_condition(TheoremId::T2_3, 2.0, 1.5).s == 2.5);

  // matrix-side statements mirror the integral-side table
  CHECK(predicted_condition(TheoremId::T3_2, 2.0, 0.5).s == 2.0);
  CHECK(predicted_condition(TheoremId::T3_3, 2.0, 1.0).log_exponent == 1.0);
  CHECK(predicted_condition(TheoremId::T3_4, 2.5, 3.0).s == 4.0);

  // necessity: branch on the weight range
  const ConditionDescriptor nec_hi = predicted_condition(TheoremId::T3_1, 2.0, 2.0, 2.0);
  CHECK(nec_hi.applicable);
  CHECK(nec_hi.kind == ConditionDescriptor::Kind::necessary);
  CHECK(nec_hi.s == 1.5);  // alpha + beta - gamma - 1/2
  const ConditionDescriptor nec_lo = predicted_condition(TheoremId::T3_1, 2.0, 0.5, 1.0);
  CHECK(nec_lo.s == 1.5);  // alpha - gamma + 1/2
  CHECK_FALSE(predicted_condition(TheoremId::T3_1, 2.0, 1.0, 1.0).applicable);

  // nonpositive exponent degrades to finiteness and says so
  const ConditionDescriptor nec_zero = predicted_condition(TheoremId::T3_1, 1.0, 2.0, 3.0);
  CHECK(nec_zero.applicable);
  CHECK(nec_zero.s == 0.0);
  CHECK_FALSE(nec_zero.note.empty());

  // corollary pins gamma implicitly
  CHECK(predicted_condition(TheoremId::Cor3_2, 2.0, 0.5).s == 1.5);
  CHECK(predicted_condition(TheoremId::Cor3_2, 3.0, 2.0).s == 2.5);
  CHECK_FALSE(predicted_condition(TheoremId::Cor3_2, 2.0, 1.0).applicable);

  // coefficient-decay statement
  const ConditionDescriptor qp = predicted_condition(TheoremId::Qp, 0.5, 0.5);
  CHECK(qp.applicable);
  CHECK(qp.s == 0.5);
  CHECK_FALSE(predicted_condition(TheoremId::Qp, 1.5, 0.5).applicable);
  CHECK_FALSE(predicted_condition(TheoremId::Qp, 0.5, 1.0).applicable);
}
