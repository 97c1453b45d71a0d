#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hilop/hilbert_op.hpp"

using namespace hilop;
using cplx = std::complex<double>;

namespace {
PointEvaluator poly_eval(std::vector<cplx> c) {
  return [c = std::move(c)](cplx z) {
    cplx acc(0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  };
}
}  // namespace

TEST_CASE("hand-computed atom pairing") {
  // mu = delta_{1/2}, f = g = z, r = 0.8: measure side gives
  // conj(f(1/2)) g(r^2/2) = 0.5 * 0.32 = 0.16; the disk side must match.
  const MeasureSpec mu = MeasureSpec::atomic({{0.5, 1.0}});
  auto id = poly_eval({cplx(0.0), cplx(1.0)});
  for (double alpha : {2.0, 3.0}) {
    const cplx lhs = pairing_lhs(mu, alpha, id, id, 0.8);
    const cplx rhs = pairing_rhs(mu, id, id, 0.8);
    INFO("alpha=", alpha);
    CHECK(rhs.real() == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(std::abs(lhs - cplx(0.16)) <= 1e-9);
  }
}

TEST_CASE("constants pair to the total mass at any radius") {
  const MeasureSpec mu = MeasureSpec::mixture(
      {{0.5, MeasureSpec::atomic({{0.3, 1.0}})}, {1.0, MeasureSpec::make_density(1.0)}});
  auto one = poly_eval({cplx(1.0)});
  for (double r : {0.5, 0.95}) {
    const cplx lhs = pairing_lhs(mu, 2.0, one, one, r);
    CHECK(std::abs(lhs - cplx(1.0)) <= 1e-8);  // 0.5 + 1/2
  }
}

TEST_CASE("zero test function annihilates the pairing") {
  const MeasureSpec mu = MeasureSpec::atomic({{0.5, 1.0}});
  auto zero = poly_eval({cplx(0.0)});
  auto id = poly_eval({cplx(0.0), cplx(1.0)});
  CHECK(std::abs(pairing_lhs(mu, 2.0, id, zero, 0.8)) <= 1e-14);
  CHECK(std::abs(pairing_rhs(mu, id, zero, 0.8)) == 0.0);
}

TEST_CASE("off-natural weights leave a visible offset") {
  // f = 1, g = z against delta_{t0}: the measure side gives t0 r^2. With the
  // disk weight one order high (w = alpha-1) the kernel of order alpha
  // reproduces only alpha/(alpha+1) of each first-order term:
  //   lhs = alpha t0 r^2 / (w + 2).
  const double t0 = 0.5, r = 0.8;
  const MeasureSpec mu = MeasureSpec::atomic({{t0, 1.0}});
  auto one = poly_eval({cplx(1.0)});
  auto id = poly_eval({cplx(0.0), cplx(1.0)});
  for (double alpha : {2.0, 3.0}) {
    PairingOptions opt;
    opt.weight_exponent = alpha - 1.0;
    const cplx lhs = pairing_lhs(mu, alpha, one, id, r, opt);
    const double predicted = alpha * t0 * r * r / (alpha + 1.0);
    INFO("alpha=", alpha);
    CHECK(std::abs(lhs - cplx(predicted)) <= 1e-9);
    CHECK(std::abs(pairing_rhs(mu, one, id, r) - cplx(t0 * r * r)) <= 1e-12);
  }
}

TEST_CASE("polynomial pairs match across degrees and radii") {
  const MeasureSpec mu = MeasureSpec::atomic({{0.5, 1.0}, {0.9, 0.25}});
  const std::vector<PointEvaluator> fs = {
      poly_eval({cplx(1.0)}),
      poly_eval({cplx(0.0), cplx(0.0, 1.0), cplx(-0.5)}),
      poly_eval({cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0),
                 cplx(0.0), cplx(2.0)}),
  };
  for (double alpha : {2.0, 3.0})
    for (double r : {0.5, 0.95})
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < fs.size(); ++j) {
          const cplx lhs = pairing_lhs(mu, alpha, fs[i], fs[j], r);
          const cplx rhs = pairing_rhs(mu, fs[i], fs[j], r);
          INFO("alpha=", alpha, " r=", r, " f=", i, " g=", j);
          CHECK(std::abs(lhs - rhs) <= 1e-7);
        }
}
