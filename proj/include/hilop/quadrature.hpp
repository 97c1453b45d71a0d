#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hilop/errors.hpp"

namespace hilop::quad {

// 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1].
// Nodes ascend; the odd indices (1, 3, ..., 13) form the embedded Gauss rule.
struct Gk15 {
  static const double node[15];
  static const double weight_kronrod[15];
  static const double weight_gauss[7];
};

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
}  // namespace detail

template <typename T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

// One Gauss-Kronrod pass over [a, b]. The reported error is the raw
// Gauss/Kronrod gap, which overstates the Kronrod error; splits are cheap.
template <typename T, typename F>
Panel<T> gk15_panel(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  T kron{};
  T gauss{};
  for (int i = 0; i < 15; ++i) {
    T fv = f(mid + half * Gk15::node[i]);
    kron += Gk15::weight_kronrod[i] * fv;
    if (i % 2 == 1) gauss += Gk15::weight_gauss[i / 2] * fv;
  }
  kron *= half;
  gauss *= half;
  return Panel<T>{a, b, kron, detail::magnitude(kron - gauss)};
}

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;  // absolute floor added to the relative goal
  std::size_t max_panels = 4000;
};

// Globally adaptive bisection over an initial partition. The relative goal is
// measured against the sum of panel magnitudes, not the (possibly cancelling)
// total, so oscillatory integrands do not stall. The returned value re-sums
// panels in left-to-right order: the result is deterministic for a given
// partition regardless of the split sequence's internal ordering.
template <typename T, typename F>
T integrate_panels(F&& f, const std::vector<double>& breaks, const AdaptiveOptions& opt = {}) {
  if (breaks.size() < 2) return T{};
  std::vector<Panel<T>> panels;
  panels.reserve(breaks.size() + 64);
  double err_sum = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto p = gk15_panel<T>(f, breaks[i], breaks[i + 1]);
    err_sum += p.error;
    scale += detail::magnitude(p.value);
    panels.push_back(p);
  }
  auto goal = [&] { return std::max(opt.abs_tol, opt.rel_tol * scale) + 1e-305; };
  while (err_sum > goal()) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const Panel<T> p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) break;  // interval exhausted at machine precision
    auto l = gk15_panel<T>(f, p.a, m);
    auto r = gk15_panel<T>(f, m, p.b);
    err_sum += l.error + r.error - p.error;
    scale += detail::magnitude(l.value) + detail::magnitude(r.value) - detail::magnitude(p.value);
    panels[worst] = l;
    panels.push_back(r);
    if (panels.size() > opt.max_panels) {
      T partial{};
      for (const auto& q : panels) partial += q.value;
      throw numeric_error("quadrature: panel budget exhausted before tolerance",
                          detail::magnitude(partial));
    }
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  T total{};
  for (const auto& p : panels) total += p.value;
  return total;
}

template <typename T, typename F>
T integrate_interval(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  return integrate_panels<T>(f, std::vector<double>{a, b}, opt);
}

// Weighted integral against the density (1-t)^p log(e/(1-t))^q dt over
// [t_lo, 1). The substitution u = -log(1-t) turns it into
//     integral_{u_lo}^inf  g(t(u), e^-u) e^-((p+1)u) (1+u)^q du,
// smooth with a pure exponential tail. g receives (t, omt) with omt = 1-t
// computed as e^-u, cancellation-free near t = 1.
//
// The ladder scan locates the integrand's support before paneling: magnitudes
// are probed on geometrically widening breakpoints, panels more than 55 nats
// below the peak are dropped, and the ladder stops 60 nats past the peak.
// A ladder that keeps rising (divergent tail) raises numeric_error carrying
// the partial sum, which is typically huge.
template <typename T, typename G>
T density_integral(double p, double q, double t_lo, G&& g, double rel_tol = 1e-10) {
  // p = -1 is admitted for the convergence-gate edge case (finite iff q < -1);
  // a divergent combination surfaces as numeric_error via the ladder scan.
  if (!(p >= -1.0)) throw invalid_measure("density integral requires exponent p >= -1");
  if (!(t_lo >= 0.0 && t_lo < 1.0)) throw domain_error("density integral: lower limit outside [0,1)");
  const double u_lo = -std::log1p(-t_lo);
  auto h = [&](double u) -> T {
    const double omt = std::exp(-u);
    const double t = -std::expm1(-u);
    double w = std::exp(-(p + 1.0) * u);
    if (q != 0.0) w *= std::pow(1.0 + u, q);
    return g(t, omt) * w;
  };

  constexpr std::size_t kMaxRungs = 220;
  constexpr double kKeepNats = 55.0;
  constexpr double kStopNats = 60.0;
  std::vector<double> rung{u_lo};
  std::vector<double> lmag{std::log(detail::magnitude(h(u_lo)))};
  double peak = lmag[0];
  std::size_t peak_idx = 0;
  double width = 0.5;
  for (;;) {
    if (std::isinf(peak) && peak > 0)
      throw numeric_error("density integral: integrand overflow", peak);
    const double u = rung.back() + width;
    rung.push_back(u);
    lmag.push_back(std::log(detail::magnitude(h(u))));
    if (lmag.back() >= peak) {
      peak = lmag.back();
      peak_idx = rung.size() - 1;
    }
    if (std::isfinite(peak) && lmag.back() < peak - kStopNats && rung.size() > peak_idx + 1) break;
    if (rung.size() >= kMaxRungs) {
      if (!std::isfinite(peak)) break;  // integrand vanished everywhere probed
      T partial{};
      for (std::size_t i = 0; i + 1 < rung.size(); ++i)
        partial += gk15_panel<T>(h, rung[i], rung[i + 1]).value;
      throw numeric_error("density integral: no decaying tail found (divergent weight?)",
                          detail::magnitude(partial));
    }
    width *= 1.3;
  }
  if (!std::isfinite(peak)) return T{};  // integrand is numerically zero

  // Integrate each contiguous run of panels near the peak; runs separated by
  // dropped panels (below peak - 55 nats) contribute < 1e-20 relative.
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  T total{};
  std::vector<double> breaks;
  breaks.reserve(rung.size());
  auto flush = [&] {
    if (breaks.size() >= 2) total += integrate_panels<T>(h, breaks, opt);
    breaks.clear();
  };
  for (std::size_t i = 0; i + 1 < rung.size(); ++i) {
    const bool keep = std::max(lmag[i], lmag[i + 1]) >= peak - kKeepNats ||
                      i + 1 == peak_idx || i == peak_idx;
    if (keep) {
      if (breaks.empty()) breaks.push_back(rung[i]);
      breaks.push_back(rung[i + 1]);
    } else {
      flush();
    }
  }
  flush();
  return total;
}

}  // namespace hilop::quad
