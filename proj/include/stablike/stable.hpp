#pragma once

// Symmetric (possibly shifted) alpha-stable laws S_alpha(0, gamma, delta)
// with characteristic function exp(i delta t - |gamma t|^alpha).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "stablike/errors.hpp"
#include "stablike/quadrature.hpp"
#include "stablike/rng.hpp"
#include "stablike/specfun.hpp"

namespace stablike {

struct StableParams {
  double alpha = 2.0;
  double gamma_scale = 1.0;
  double delta_shift = 0.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("StableParams: alpha must lie in (0, 2]");
    if (!(gamma_scale > 0.0) || !std::isfinite(gamma_scale)) throw DomainError("StableParams: gamma_scale must be positive");
    if (!std::isfinite(delta_shift)) throw DomainError("StableParams: delta_shift must be finite");
  }
};

/// Coefficient c in f(y) ~ c |y|^(-alpha-1):
/// gamma^alpha Gamma(alpha + 1) sin(pi alpha / 2) / pi (gamma / pi at alpha = 1).
inline double tail_constant(const StableParams& p) {
  p.validate();
  if (!(p.alpha < 2.0)) throw DomainError("tail_constant: alpha = 2 has no power tail");
  if (p.alpha == 1.0) return p.gamma_scale / std::numbers::pi;
  return std::pow(p.gamma_scale, p.alpha) * gamma(p.alpha + 1.0) * std::sin(0.5 * std::numbers::pi * p.alpha) /
         std::numbers::pi;
}

namespace stable_detail {

constexpr double kSeriesTol = 1e-17;

/// Large-argument expansion of the standard density
///   g(u) = (1/pi) sum_k (-1)^(k+1) Gamma(k alpha + 1)/k! sin(k pi alpha/2) u^(-k alpha - 1).
/// Convergent for alpha < 1, asymptotic for alpha > 1. Returns false when
/// the sum cannot be trusted to ~1e-15 relative.
inline bool large_u_series(double alpha, double u, SpecFunResult& out, int max_terms = 400) {
  const double lu = std::log(u);
  double sum = 0.0, abs_sum = 0.0, prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= max_terms; ++k) {
    const double kd = k;
    const double mag = std::exp(std::lgamma(kd * alpha + 1.0) - std::lgamma(kd + 1.0) - (kd * alpha + 1.0) * lu);
    if (alpha > 1.0 && k > 2 && mag > prev_mag) return false;  // asymptotic series turned
    const double s = std::sin(std::fmod(kd * alpha * 0.5, 2.0) * std::numbers::pi);
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * mag * s;
    sum += term;
    abs_sum += std::abs(term);
    if (k > 1 && mag < kSeriesTol * std::abs(sum) && mag < prev_mag) {
      if (!(abs_sum <= 50.0 * std::abs(sum))) return false;
      out = {sum / std::numbers::pi, (mag + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum) / std::numbers::pi};
      return true;
    }
    prev_mag = mag;
  }
  return false;
}

/// Taylor series at the origin, entire for alpha > 1:
///   g(u) = 1/(pi alpha) sum_k (-1)^k Gamma((2k+1)/alpha)/(2k)! u^(2k).
inline bool small_u_series(double alpha, double u, SpecFunResult& out, int max_terms = 600) {
  if (!(alpha > 1.0)) return false;
  const double lu = std::log(u);
  double sum = 0.0, abs_sum = 0.0, prev_mag = 0.0;
  for (int k = 0; k < max_terms; ++k) {
    const double kd = k;
    const double mag = std::exp(std::lgamma((2.0 * kd + 1.0) / alpha) - std::lgamma(2.0 * kd + 1.0) + 2.0 * kd * lu);
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * mag;
    sum += term;
    abs_sum += mag;
    if (k > 0 && mag < prev_mag && mag < kSeriesTol * std::abs(sum)) {
      if (!(abs_sum <= 50.0 * std::abs(sum))) return false;
      const double scale = 1.0 / (std::numbers::pi * alpha);
      out = {scale * sum, scale * (mag + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum)};
      return true;
    }
    prev_mag = mag;
  }
  return false;
}

/// (1/pi) int_0^inf exp(-t^alpha) cos(u t) dt by quadrature between the
/// zeros of cos(u t); long alternating tails are summed with CVZ acceleration.
inline SpecFunResult inversion(double alpha, double u) {
  const quad::Tolerance tol{1e-300, 1e-13, 400};
  auto h = [alpha, u](double t) { return std::exp(-std::pow(t, alpha)) * std::cos(u * t); };
  const double t_end = std::pow(41.4, 1.0 / alpha);  // exp(-t_end^alpha) ~ 1e-18
  const double half = std::numbers::pi / u;
  const double z0 = 0.5 * half;

  // Geometric ladder through [0, b] resolves the cusp of t^alpha at 0.
  auto ladder = [](double b) {
    std::vector<double> pts{0.0};
    for (double p = std::ldexp(1.0, -10); p < b; p *= 2.0) pts.push_back(p);
    pts.push_back(b);
    return pts;
  };

  const double n_half = u * t_end / std::numbers::pi;
  double value = 0.0, err = 0.0;
  bool ok = true;
  if (n_half <= 64.0) {
    auto pts = ladder(t_end);
    for (double z = z0; z < t_end; z += half) pts.push_back(z);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto r = quad::integrate_pieces(h, pts, tol);
    value = r.value;
    err = r.abs_error;
    ok = r.converged;
  } else {
    const auto first = quad::integrate_pieces(h, ladder(z0), tol);
    value = first.value;
    err = first.abs_error;
    ok = first.converged;
    constexpr int kTerms = 40;
    std::vector<double> a;
    a.reserve(kTerms);
    for (int k = 0; k < kTerms; ++k) {
      const double lo = z0 + k * half;
      const auto r = quad::integrate(h, lo, lo + half, tol);
      a.push_back((k % 2 == 0 ? -1.0 : 1.0) * r.value);
      err += r.abs_error;
      ok = ok && r.converged;
    }
    const double full = quad::alternating_sum_cvz(a);
    const double coarse = quad::alternating_sum_cvz(std::vector<double>(a.begin(), a.begin() + kTerms / 2));
    value -= full;
    err += std::abs(full - coarse);
  }
  value /= std::numbers::pi;
  err = err / std::numbers::pi + 1e-18;
  if (!ok) throw ConvergenceError("sas_density: inversion quadrature did not converge", value, err);
  return {value, err};
}

/// Density of S_alpha(0, 1, 0) at u >= 0.
inline SpecFunResult standard_density(double alpha, double u) {
  u = std::abs(u);
  if (alpha == 1.0) return {1.0 / (std::numbers::pi * (1.0 + u * u)), 0.0};
  if (alpha == 2.0) return {std::exp(-0.25 * u * u) / (2.0 * std::sqrt(std::numbers::pi)), 0.0};
  if (u == 0.0) return {gamma(1.0 + 1.0 / alpha) / std::numbers::pi, 0.0};
  if (std::isinf(u)) return {0.0, 0.0};
  SpecFunResult out;
  if (alpha > 1.0 && u < 2.0) {
    if (small_u_series(alpha, u, out) || large_u_series(alpha, u, out)) return out;
  } else {
    if (large_u_series(alpha, u, out) || small_u_series(alpha, u, out)) return out;
  }
  return inversion(alpha, u);
}

}  // namespace stable_detail

/// Density and error estimate of S_alpha(0, gamma, delta) at y.
inline SpecFunResult sas_density_result(const StableParams& p, double y) {
  p.validate();
  const auto r = stable_detail::standard_density(p.alpha, (y - p.delta_shift) / p.gamma_scale);
  return {r.value / p.gamma_scale, r.est_abs_error / p.gamma_scale};
}

inline double sas_density(const StableParams& p, double y) { return sas_density_result(p, y).value; }

/// Chambers-Mallows-Stuck draw from S_alpha(0, gamma, delta).
inline double sas_sample(const StableParams& p, RandomStream& rng) {
  if (p.alpha == 2.0) return p.delta_shift + p.gamma_scale * std::numbers::sqrt2 * rng.normal();
  const double u = std::numbers::pi * (rng.uniform_open() - 0.5);
  if (p.alpha == 1.0) return p.delta_shift + p.gamma_scale * std::tan(u);
  const double e = rng.exponential();
  const double a = p.alpha;
  const double x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) * std::pow(std::cos((1.0 - a) * u) / e, (1.0 - a) / a);
  return p.delta_shift + p.gamma_scale * x;
}

struct DensityGrid {
  std::vector<double> points;
  std::vector<double> values;
  double quadrature_error = 0.0;

  /// Trapezoid mass over the grid.
  double trapezoid_mass() const {
    double m = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) m += 0.5 * (values[i] + values[i - 1]) * (points[i] - points[i - 1]);
    return m;
  }
};

inline DensityGrid density_grid(const StableParams& p, std::vector<double> points) {
  std::sort(points.begin(), points.end());
  DensityGrid g;
  g.values.reserve(points.size());
  for (double y : points) {
    const auto r = sas_density_result(p, y);
    g.values.push_back(r.value);
    g.quadrature_error = std::max(g.quadrature_error, r.est_abs_error);
  }
  g.points = std::move(points);
  return g;
}

/// Memo of standard densities keyed by exact (alpha, u). Quadrature rules
/// on fixed breakpoints revisit the same nodes across scan points, so the
/// hit rate in drift scans is high. Thread-safe.
class DensityCache {
 public:
  SpecFunResult standard(double alpha, double u) {
    u = std::abs(u);
    const Key key{bits(alpha), bits(u)};
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    const auto r = stable_detail::standard_density(alpha, u);
    std::lock_guard lock(mutex_);
    if (map_.size() > kMaxEntries) map_.clear();
    map_.emplace(key, r);
    return r;
  }

  SpecFunResult density(const StableParams& p, double y) {
    const auto r = standard(p.alpha, (y - p.delta_shift) / p.gamma_scale);
    return {r.value / p.gamma_scale, r.est_abs_error / p.gamma_scale};
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return map_.size();
  }

 private:
  static constexpr std::size_t kMaxEntries = 4'000'000;
  struct Key {
    std::uint64_t a, u;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const { return splitmix64(k.a ^ splitmix64(k.u)); }
  };
  static std::uint64_t bits(double v) {
    std::uint64_t b;
    std::memcpy(&b, &v, sizeof b);
    return b;
  }
  mutable std::mutex mutex_;
  std::unordered_map<Key, SpecFunResult, Hash> map_;
};

}  // namespace stablike
