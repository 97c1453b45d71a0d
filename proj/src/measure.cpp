#include "hilop/measure.hpp"

#include <cmath>
#include <limits>

#include "hilop/quadrature.hpp"

namespace hilop {

namespace {

constexpr double kAtomCeiling = 1.0 - 1e-12;
constexpr double kClampFloor = 1e-300;

void flatten_into(const MeasureSpec& mu, double scale, MeasureLeaves& out) {
  switch (mu.kind) {
    case MeasureSpec::Kind::atomic:
      for (const auto& a : mu.atoms) out.atoms.push_back({scale, a});
      break;
    case MeasureSpec::Kind::density:
      out.densities.push_back({scale, mu.density});
      break;
    case MeasureSpec::Kind::mixture:
      for (const auto& [s, part] : mu.parts) flatten_into(part, scale * s, out);
      break;
  }
}

double clamp_tiny(double v) { return std::abs(v) < kClampFloor ? 0.0 : v; }

// Finiteness of integral (1-t)^A log(e/(1-t))^B dt near t = 1.
bool density_tail_finite(double a_exp, double b_exp) {
  if (a_exp > -1.0) return true;
  return a_exp == -1.0 && b_exp < -1.0;
}

template <typename T, typename F>
T integrate_leaves(const MeasureLeaves& leaves, double t_lo, const F& f, double rel_tol) {
  T total{};
  for (const auto& [scale, atom] : leaves.atoms) {
    if (atom.location < t_lo) continue;
    total += scale * atom.weight * f(atom.location, 1.0 - atom.location);
  }
  for (const auto& [scale, d] : leaves.densities) {
    total += scale * quad::density_integral<T>(d.p, d.q, t_lo, f, rel_tol);
  }
  return total;
}

}  // namespace

MeasureSpec MeasureSpec::atomic(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.location >= 0.0 && a.location <= kAtomCeiling))
      throw invalid_measure("atom location must lie in [0, 1 - 1e-12]");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw invalid_measure("atom weight must be positive and finite");
  }
  MeasureSpec mu;
  mu.kind = Kind::atomic;
  mu.atoms = std::move(atoms);
  return mu;
}

MeasureSpec MeasureSpec::make_density(double p, double q) {
  if (!(p > -1.0)) throw invalid_measure("density exponent must satisfy p > -1");
  if (!std::isfinite(p) || !std::isfinite(q))
    throw invalid_measure("density exponents must be finite");
  MeasureSpec mu;
  mu.kind = Kind::density;
  mu.density = {p, q};
  return mu;
}

MeasureSpec MeasureSpec::mixture(std::vector<std::pair<double, MeasureSpec>> parts) {
  if (parts.empty()) throw invalid_measure("mixture needs at least one part");
  for (const auto& [scale, part] : parts) {
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw invalid_measure("mixture scale must be positive and finite");
    (void)part;
  }
  MeasureSpec mu;
  mu.kind = Kind::mixture;
  mu.parts = std::move(parts);
  return mu;
}

MeasureLeaves flatten(const MeasureSpec& mu) {
  MeasureLeaves leaves;
  flatten_into(mu, 1.0, leaves);
  return leaves;
}

double moment(const MeasureSpec& mu, std::size_t j, double rel_tol) {
  const auto leaves = flatten(mu);
  const double dj = static_cast<double>(j);
  auto tj = [dj](double t, double) { return std::pow(t, dj); };
  return clamp_tiny(integrate_leaves<double>(leaves, 0.0, tj, rel_tol));
}

double tail(const MeasureSpec& mu, double t, double rel_tol) {
  if (!(t >= 0.0 && t < 1.0)) throw domain_error("tail point outside [0,1)");
  const auto leaves = flatten(mu);
  auto one = [](double, double) { return 1.0; };
  return integrate_leaves<double>(leaves, t, one, rel_tol);
}

double integrate(const MeasureSpec& mu, const std::function<double(double, double)>& f,
                 double rel_tol) {
  return integrate_leaves<double>(flatten(mu), 0.0, f, rel_tol);
}

std::complex<double> integrate_complex(
    const MeasureSpec& mu, const std::function<std::complex<double>(double, double)>& f,
    double rel_tol) {
  return integrate_leaves<std::complex<double>>(flatten(mu), 0.0, f, rel_tol);
}

double integrate_tail(const MeasureSpec& mu, double t_lo,
                      const std::function<double(double, double)>& f, double rel_tol) {
  if (!(t_lo >= 0.0 && t_lo < 1.0)) throw domain_error("integration limit outside [0,1)");
  return integrate_leaves<double>(flatten(mu), t_lo, f, rel_tol);
}

MeasureSpec weighted_transform(const MeasureSpec& mu, MeasureWeight weight, double beta) {
  switch (mu.kind) {
    case MeasureSpec::Kind::atomic: {
      std::vector<MeasureSpec::Atom> atoms = mu.atoms;
      for (auto& a : atoms) {
        const double omt = 1.0 - a.location;
        const double w = weight == MeasureWeight::log_e ? 1.0 - std::log(omt)
                                                        : std::pow(omt, 1.0 - beta);
        a.weight *= w;
      }
      return MeasureSpec::atomic(std::move(atoms));
    }
    case MeasureSpec::Kind::density: {
      if (weight == MeasureWeight::log_e)
        return MeasureSpec::make_density(mu.density.p, mu.density.q + 1.0);
      return MeasureSpec::make_density(mu.density.p + 1.0 - beta, mu.density.q);
    }
    case MeasureSpec::Kind::mixture: {
      std::vector<std::pair<double, MeasureSpec>> parts;
      parts.reserve(mu.parts.size());
      for (const auto& [scale, part] : mu.parts)
        parts.emplace_back(scale, weighted_transform(part, weight, beta));
      return MeasureSpec::mixture(std::move(parts));
    }
  }
  throw domain_error("weighted_transform: unknown measure kind");
}

GateResult convergence_gate(const MeasureSpec& mu, double beta, double rel_tol) {
  const auto leaves = flatten(mu);
  constexpr double inf = std::numeric_limits<double>::infinity();

  if (beta < 1.0) {
    auto one = [](double, double) { return 1.0; };
    return {true, integrate_leaves<double>(leaves, 0.0, one, rel_tol)};
  }

  if (beta == 1.0) {
    // log weight keeps every admissible density finite: exponent p is unchanged
    double value = 0.0;
    for (const auto& [scale, atom] : leaves.atoms)
      value += scale * atom.weight * (1.0 - std::log(1.0 - atom.location));
    auto one = [](double, double) { return 1.0; };
    for (const auto& [scale, d] : leaves.densities)
      value += scale * quad::density_integral<double>(d.p, d.q + 1.0, 0.0, one, rel_tol);
    return {true, value};
  }

  for (const auto& [scale, d] : leaves.densities) {
    (void)scale;
    if (!density_tail_finite(d.p + 1.0 - beta, d.q)) return {false, inf};
  }
  double value = 0.0;
  for (const auto& [scale, atom] : leaves.atoms)
    value += scale * atom.weight * std::pow(1.0 - atom.location, 1.0 - beta);
  auto one = [](double, double) { return 1.0; };
  for (const auto& [scale, d] : leaves.densities)
    value += scale * quad::density_integral<double>(d.p + 1.0 - beta, d.q, 0.0, one, rel_tol);
  return {true, value};
}

std::vector<double> moment_batch_serial(const MeasureSpec& mu, std::size_t j_begin,
                                        std::size_t j_end, double rel_tol) {
  const auto leaves = flatten(mu);
  std::vector<double> out(j_end > j_begin ? j_end - j_begin : 0);
  for (std::size_t j = j_begin; j < j_end; ++j) {
    const double dj = static_cast<double>(j);
    auto tj = [dj](double t, double) { return std::pow(t, dj); };
    out[j - j_begin] = clamp_tiny(integrate_leaves<double>(leaves, 0.0, tj, rel_tol));
  }
  return out;
}

std::vector<double> moment_batch(const MeasureSpec& mu, std::size_t j_begin, std::size_t j_end,
                                 double rel_tol) {
  const auto leaves = flatten(mu);
  const std::ptrdiff_t n = j_end > j_begin ? static_cast<std::ptrdiff_t>(j_end - j_begin) : 0;
  std::vector<double> out(static_cast<std::size_t>(n));
  // Each j is independent and written to its own slot: the result is identical
  // to the serial path for any thread count.
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double dj = static_cast<double>(j_begin + static_cast<std::size_t>(i));
    auto tj = [dj](double t, double) { return std::pow(t, dj); };
    out[static_cast<std::size_t>(i)] =
        clamp_tiny(integrate_leaves<double>(leaves, 0.0, tj, rel_tol));
  }
  return out;
}

MomentCache::MomentCache(MeasureSpec mu, double rel_tol)
    : mu_(std::move(mu)), leaves_(flatten(mu_)), rel_tol_(rel_tol) {}

void MomentCache::ensure(std::size_t j_max) {
  if (j_max < values_.size()) return;
  std::size_t target = std::max<std::size_t>(j_max + 1, 64);
  target = std::max(target, values_.size() * 2);
  build_range(values_.size(), target);
}

void MomentCache::build_range(std::size_t from, std::size_t to) {
  auto chunk = moment_batch(mu_, from, to, rel_tol_);
  values_.insert(values_.end(), chunk.begin(), chunk.end());
}

void MomentCache::build_range_serial(std::size_t from, std::size_t to) {
  auto chunk = moment_batch_serial(mu_, from, to, rel_tol_);
  values_.insert(values_.end(), chunk.begin(), chunk.end());
}

double MomentCache::operator[](std::size_t j) const {
  if (j >= values_.size()) throw domain_error("moment cache: index beyond built range");
  return values_[j];
}

}  // namespace hilop
