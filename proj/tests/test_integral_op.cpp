#include <doctest.h>

#include <cmath>
#include <complex>

#include "hilop/hilbert_op.hpp"
#include "hilop/test_matrix.hpp"

using namespace hilop;
using cplx = std::complex<double>;

TEST_CASE("atom image is the kernel evaluated at the atom") {
  const MeasureSpec mu = MeasureSpec::atomic({{0.5, 1.0}});
  auto one = [](cplx) { return cplx(1.0); };
  // (1 - 0.5 * 0.5)^-2 = 16/9
  CHECK(integral_apply(mu, 2.0, one, cplx(0.5)).real() ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  CHECK(integral_apply(mu, 2.0, one, cplx(0.5)).imag() == doctest::Approx(0.0));
}

TEST_CASE("value at the origin is the total mass for every order") {
  auto one = [](cplx) { return cplx(1.0); };
  for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
    CHECK(integral_apply(MeasureSpec::lebesgue(), alpha, one, cplx(0.0)).real() ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  const MeasureSpec mix = MeasureSpec::mixture(
      {{0.25, MeasureSpec::atomic({{0.5, 1.0}})}, {0.5, MeasureSpec::lebesgue()}});
  CHECK(integral_apply(mix, 2.0, one, cplx(0.0)).real() ==
        doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("order-one lebesgue image has the logarithmic closed form") {
  auto one = [](cplx) { return cplx(1.0); };
  for (cplx z : {cplx(0.3), cplx(0.0, 0.6), cplx(-0.5), cplx(0.2, -0.7)}) {
    const cplx expected = -std::log(cplx(1.0) - z) / z;
    const cplx got = integral_apply(MeasureSpec::lebesgue(), 1.0, one, z);
    INFO("z=(", z.real(), ",", z.imag(), ")");
    CHECK(std::abs(got - expected) <= 1e-9 * std::abs(expected));
  }
}

TEST_CASE("integral image is linear in the integrand") {
  const MeasureSpec mu = MeasureSpec::make_density(0.5, -1.0);
  auto f = [](cplx z) { return z * z - cplx(0.0, 1.0); };
  auto g = [](cplx z) { return std::exp(z * 0.3); };
  auto combo = [&](cplx z) { return 2.0 * f(z) + 3.0 * g(z); };
  for (cplx z : {cplx(0.4), cplx(0.1, 0.8)}) {
    const cplx lhs = integral_apply(mu, 1.5, combo, z);
    const cplx rhs =
        2.0 * integral_apply(mu, 1.5, f, z) + 3.0 * integral_apply(mu, 1.5, g, z);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("series and integral images agree across the shipped matrix") {
  const DiskGrid grid = DiskGrid::dyadic(4, 16);
  for (const auto& c : equivalence_test_matrix()) {
    const GateResult gate = convergence_gate(c.mu, c.beta);
    INFO(c.label, " via ", c.route);
    REQUIRE(gate.admissible);
    const TestFamilyMember f = make_family(c.family, c.parameter, c.order, 1024);
    HankelOperator::ApplyOptions opt;
    opt.n_out = 1024;
    opt.tolerance = 1e-8;
    const EquivalenceResult r = equivalence_check(c.mu, c.alpha, f, grid, 0.9, opt);
    CHECK(r.points > 0);
    CHECK(r.max_gap <= r.error_budget);
  }
}

TEST_CASE("restricting the comparison radius drops grid points") {
  const TestFamilyMember f = make_family(Family::constant_one, 0.0);
  const DiskGrid grid = DiskGrid::dyadic(4, 16);
  const EquivalenceResult wide =
      equivalence_check(MeasureSpec::lebesgue(), 2.0, f, grid, 0.9);
  const EquivalenceResult narrow =
      equivalence_check(MeasureSpec::lebesgue(), 2.0, f, grid, 0.6);
  CHECK(narrow.points < wide.points);
  CHECK(narrow.points >= 1);
}
