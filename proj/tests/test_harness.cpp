#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hilop/harness.hpp"
#include "hilop/test_matrix.hpp"

using namespace hilop;

namespace {
HarnessOptions fast_options() {
  HarnessOptions opt;
  opt.norm_params.clear();  // classifier + functional sweep only
  return opt;
}
}  // namespace

TEST_CASE("bounded prediction confirmed on the critical density") {
  const HarnessReport rep =
      run_boundedness_harness(TheoremId::T2_1, MeasureSpec::make_density(1.0), 2.0, 0.5);
  CHECK(rep.theorem == "T2.1");
  CHECK(rep.gate.admissible);
  CHECK(rep.classifier_satisfied);
  CHECK(std::abs(rep.growth_exponent_raw) < 0.05);
  CHECK(rep.functional_bounded);
  CHECK(rep.consistent);
  REQUIRE(rep.functional_sweep.size() == 4);
  REQUIRE(rep.norm_sweep.size() == 1);  // fixed constant input
  CHECK(rep.norm_sweep[0].value < 10.0);
}

TEST_CASE("unbounded prediction confirmed on the borderline measure") {
  const HarnessReport rep =
      run_boundedness_harness(TheoremId::T2_1, MeasureSpec::lebesgue(), 2.0, 0.5);
  CHECK_FALSE(rep.classifier_satisfied);
  CHECK(rep.growth_exponent == doctest::Approx(1.0).epsilon(0.05));
  CHECK_FALSE(rep.functional_bounded);
  CHECK(rep.consistent);
  // the image norm signal blows up through the grid cap
  CHECK(rep.norm_sweep[0].value > 100.0);
}

TEST_CASE("swept norm signal for the logarithmic and power statements") {
  const HarnessReport crit =
      run_boundedness_harness(TheoremId::T2_2, MeasureSpec::make_density(1.0, -1.0), 2.0, 1.0);
  CHECK(crit.classifier_satisfied);
  CHECK(crit.functional_bounded);
  CHECK(crit.consistent);
  REQUIRE(crit.norm_sweep.size() == 3);
  for (const auto& p : crit.norm_sweep) CHECK(p.value < 5.0);

  const HarnessReport pow =
      run_boundedness_harness(TheoremId::T2_3, MeasureSpec::make_density(2.0), 2.0, 2.0);
  CHECK(pow.classifier_satisfied);
  CHECK(pow.consistent);
  for (const auto& p : pow.norm_sweep) CHECK(p.value < 2.0);

  const HarnessReport bad =
      run_boundedness_harness(TheoremId::T2_3, MeasureSpec::make_density(1.0), 2.0, 2.0,
                              fast_options());
  CHECK_FALSE(bad.classifier_satisfied);
  CHECK(bad.growth_exponent == doctest::Approx(1.0).epsilon(0.05));
  CHECK(bad.consistent);
}

TEST_CASE("classifier and functional verdicts agree across the shipped matrix") {
  for (const auto& entry : measure_test_matrix()) {
    for (TheoremId id : {TheoremId::T2_1, TheoremId::T2_2, TheoremId::T2_3}) {
      const double beta = id == TheoremId::T2_1 ? 0.5 : (id == TheoremId::T2_2 ? 1.0 : 2.0);
      const HarnessReport rep = run_boundedness_harness(id, entry.mu, 2.0, beta, fast_options());
      INFO(entry.label, " under ", rep.theorem);
      CHECK(rep.consistent);
    }
  }
}

TEST_CASE("sweep parameters outside the certified window are rejected") {
  HarnessOptions opt = fast_options();
  opt.a_sweep = {0.9, 1.0 - std::ldexp(1.0, -15)};
  CHECK_THROWS_AS(
      run_boundedness_harness(TheoremId::T2_1, MeasureSpec::lebesgue(), 2.0, 0.5, opt),
      domain_error);
  opt.a_sweep = {0.0};
  CHECK_THROWS_AS(
      run_boundedness_harness(TheoremId::T2_1, MeasureSpec::lebesgue(), 2.0, 0.5, opt),
      domain_error);
}

TEST_CASE("equivalence harness rejects necessity-only statements") {
  CHECK_THROWS_AS(
      run_boundedness_harness(TheoremId::T3_1, MeasureSpec::lebesgue(), 2.0, 2.0),
      domain_error);
  CHECK_THROWS_AS(run_boundedness_harness(TheoremId::Qp, MeasureSpec::lebesgue(), 0.5, 0.5),
                  domain_error);
}

TEST_CASE("compactness proxy separates the critical and vanishing refinements") {
  const CompactnessReport crit =
      run_compactness_proxy(TheoremId::T2_2, MeasureSpec::make_density(1.0, -1.0), 2.0, 1.0);
  CHECK_FALSE(crit.tends_to_zero);
  CHECK_FALSE(crit.vanishing_classified);
  CHECK(crit.consistent);
  CHECK(crit.decay_factor < 10.0);
  CHECK(crit.note.empty());

  const CompactnessReport vane =
      run_compactness_proxy(TheoremId::T2_2, MeasureSpec::make_density(1.0, -2.0), 2.0, 1.0);
  CHECK(vane.tends_to_zero);
  CHECK(vane.vanishing_classified);
  CHECK(vane.consistent);
  CHECK(vane.decay_factor >= 10.0);
}

TEST_CASE("compactly supported measures have an eventually dead proxy") {
  const CompactnessReport rep =
      run_compactness_proxy(TheoremId::T2_1, MeasureSpec::atomic({{0.5, 1.0}}), 2.0, 0.5);
  CHECK(rep.tends_to_zero);
  CHECK(rep.consistent);
  CHECK(rep.proxy.front().value > 0.0);
  CHECK(rep.proxy.back().value == 0.0);
}

TEST_CASE("source-space ambiguity is flagged for the shifted statements") {
  const CompactnessReport rep =
      run_compactness_proxy(TheoremId::T2_3, MeasureSpec::make_density(2.0), 2.0, 2.0);
  CHECK_FALSE(rep.note.empty());
  CHECK(run_compactness_proxy(TheoremId::T2_2, MeasureSpec::lebesgue(), 2.0, 1.0).note.empty());
}

TEST_CASE("necessity blocks are flat at the critical density and grow past it") {
  // p = alpha + beta - gamma - 3/2 = 0.5 is exactly the predicted tail law.
  const NecessityReport crit =
      run_necessity_harness(MeasureSpec::make_density(0.5), 2.0, 2.0, 2.0);
  CHECK(crit.predicted.s == 1.5);
  CHECK(crit.classifier_satisfied);
  CHECK(crit.blocks_bounded);
  CHECK(crit.consistent);
  CHECK(crit.block_growth_exponent > -0.2);
  CHECK(crit.block_growth_exponent < 0.05);

  const NecessityReport inside =
      run_necessity_harness(MeasureSpec::make_density(1.5), 2.0, 2.0, 2.0);
  CHECK(inside.classifier_satisfied);
  CHECK(inside.blocks_bounded);
  CHECK(inside.block_growth_exponent < -1.0);

  const NecessityReport failing =
      run_necessity_harness(MeasureSpec::make_density(0.1), 2.0, 2.0, 2.0);
  CHECK_FALSE(failing.classifier_satisfied);
  CHECK_FALSE(failing.blocks_bounded);
  CHECK(failing.consistent);
  CHECK(failing.block_growth_exponent == doctest::Approx(0.8).epsilon(0.25));
}

TEST_CASE("necessity fixed-input branch reads the matched block") {
  // Unit coefficients of the image make the matched block energy exactly 2^i.
  const NecessityReport leb = run_necessity_harness(MeasureSpec::lebesgue(), 2.0, 0.5, 1.0);
  CHECK(leb.predicted.s == 1.5);
  CHECK_FALSE(leb.classifier_satisfied);
  CHECK_FALSE(leb.blocks_bounded);
  CHECK(leb.consistent);
  CHECK(leb.block_growth_exponent == doctest::Approx(1.0).epsilon(1e-6));
  REQUIRE(leb.block_sweep.size() == 7);
  for (std::size_t i = 0; i < leb.block_sweep.size(); ++i)
    CHECK(leb.block_sweep[i].value == doctest::Approx(std::ldexp(1.0, int(i) + 2)).epsilon(1e-9));

  const NecessityReport ok =
      run_necessity_harness(MeasureSpec::make_density(1.0), 2.0, 0.5, 1.0);
  CHECK(ok.classifier_satisfied);
  CHECK(ok.blocks_bounded);
  CHECK(ok.consistent);

  const NecessityReport atom =
      run_necessity_harness(MeasureSpec::atomic({{0.5, 1.0}}), 2.0, 0.5, 1.0);
  CHECK(atom.classifier_satisfied);
  CHECK(atom.blocks_bounded);
  CHECK(atom.consistent);
}

TEST_CASE("necessity argument validation") {
  const MeasureSpec mu = MeasureSpec::lebesgue();
  CHECK_THROWS_AS(run_necessity_harness(mu, 2.0, 1.0, 1.0), domain_error);  // beta = 1
  CHECK_THROWS_AS(run_necessity_harness(mu, 0.0, 2.0, 1.0), domain_error);
  CHECK_THROWS_AS(run_necessity_harness(mu, 2.0, 2.0, 0.0), domain_error);
  NecessityOptions opt;
  opt.ladder_min = 5;
  opt.ladder_max = 4;
  CHECK_THROWS_AS(run_necessity_harness(mu, 2.0, 2.0, 2.0, opt), domain_error);
  opt = NecessityOptions{};
  opt.n_out = 256;  // deepest matched block needs 2^9
  CHECK_THROWS_AS(run_necessity_harness(mu, 2.0, 0.5, 1.0, opt), domain_error);
}

TEST_CASE("nonpositive necessity exponent degrades to finiteness") {
  const NecessityReport rep = run_necessity_harness(MeasureSpec::lebesgue(), 1.0, 2.0, 3.0);
  CHECK(rep.predicted.s == 0.0);
  CHECK(rep.classifier_satisfied);  // any admissible measure is finite
  CHECK(std::isnan(rep.classification.fitted_exponent));
  CHECK(rep.classification.constant_estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.consistent);
}

TEST_CASE("coefficient-decay harness matches the classifier on both sides") {
  const QpReport good = run_qp_harness(MeasureSpec::make_density(-0.5), 0.5, 0.5, 20000);
  CHECK(good.classifier_satisfied);
  CHECK(good.verdict.bounded);
  CHECK(good.verdict.decade_ratio < 1.1);
  CHECK(good.consistent);

  const QpReport leb = run_qp_harness(MeasureSpec::lebesgue(), 0.5, 0.5, 20000);
  CHECK(leb.classifier_satisfied);  // order-1 tail implies the order-1/2 law
  CHECK(leb.verdict.bounded);
  CHECK(leb.consistent);

  const QpReport bad = run_qp_harness(MeasureSpec::make_density(-0.9), 0.5, 0.5, 20000);
  CHECK_FALSE(bad.classifier_satisfied);
  CHECK_FALSE(bad.verdict.bounded);
  CHECK(bad.verdict.decade_ratio > 2.0);
  CHECK(bad.consistent);

  CHECK_THROWS_AS(run_qp_harness(MeasureSpec::lebesgue(), 1.5), domain_error);
  CHECK_THROWS_AS(run_qp_harness(MeasureSpec::lebesgue(), 0.5, 0.5, 50), domain_error);
}

TEST_CASE("reports are deterministic up to the runtime field") {
  auto strip = [](nlohmann::json j) {
    j.erase("runtime_ms");
    return j;
  };
  const MeasureSpec mu = MeasureSpec::make_density(1.0, -1.0);
  const nlohmann::json a =
      strip(to_json(run_boundedness_harness(TheoremId::T2_2, mu, 2.0, 1.0, fast_options())));
  const nlohmann::json b =
      strip(to_json(run_boundedness_harness(TheoremId::T2_2, mu, 2.0, 1.0, fast_options())));
  CHECK(a.dump() == b.dump());

  const nlohmann::json c = strip(to_json(run_necessity_harness(mu, 2.0, 2.0, 2.0)));
  const nlohmann::json d = strip(to_json(run_necessity_harness(mu, 2.0, 2.0, 2.0)));
  CHECK(c.dump() == d.dump());
}

TEST_CASE("report serialization carries the full signal set") {
  const HarnessReport rep = run_boundedness_harness(TheoremId::T2_1, MeasureSpec::lebesgue(),
                                                    2.0, 0.5, fast_options());
  const nlohmann::json j = to_json(rep);
  for (const char* key :
       {"theorem", "measure", "alpha", "beta", "predicted", "gate", "classification",
        "classifier_satisfied", "functional_sweep", "growth_exponent_raw", "growth_exponent",
        "growth_fit_residual", "functional_bounded", "norm_sweep", "consistent", "runtime_ms"}) {
    INFO(key);
    CHECK(j.contains(key));
  }
  CHECK(j["runtime_ms"].is_number_integer());
  CHECK(j["functional_sweep"].size() == 4);

  const nlohmann::json q =
      to_json(run_qp_harness(MeasureSpec::atomic({{0.5, 1.0}}), 0.5, 0.5, 200));
  CHECK(q["verdict"].contains("decade_ratio"));
  CHECK(q["runtime_ms"].is_number_integer());
  CHECK(q["consistent"].is_boolean());
}
