#pragma once

// Real-argument special functions: Gamma, digamma, generalized binomial
// coefficients, the Gauss hypergeometric function, and the even binomial
// series that appears in the threshold constants.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "stablike/errors.hpp"
#include "stablike/quadrature.hpp"

namespace stablike {

struct SpecFunResult {
  double value = 0.0;
  double est_abs_error = 0.0;
};

namespace specfun_detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum A(z) for Gamma(z + 1) = sqrt(2 pi) t^(z + 1/2) e^-t A(z).
inline double lanczos_sum(double z) {
  double x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + i);
  return x;
}

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace specfun_detail

/// Gamma function for z > 0 (Lanczos, g = 7), relative error ~1e-15.
inline double gamma(double z) {
  if (!(z > 0.0)) throw DomainError("gamma: argument must be positive, got " + std::to_string(z));
  using namespace specfun_detail;
  if (z < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma(1.0 - z));
  const double x = z - 1.0;
  const double t = x + kLanczosG + 0.5;
  const double half_pow = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t)) * lanczos_sum(x);
}

/// log Gamma(z) for z > 0.
inline double log_gamma(double z) {
  if (!(z > 0.0)) throw DomainError("log_gamma: argument must be positive");
  using namespace specfun_detail;
  if (z < 0.5) return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
  const double x = z - 1.0;
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

/// Reciprocal Gamma on the whole real line (zero at the poles).
inline double reciprocal_gamma(double z) {
  if (specfun_detail::is_nonpositive_integer(z)) return 0.0;
  if (z > 0.0) return 1.0 / gamma(z);
  // Reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi.
  return std::sin(std::numbers::pi * z) * gamma(1.0 - z) / std::numbers::pi;
}

/// Digamma Psi(z) = Gamma'(z)/Gamma(z) for z > 0.
/// Recurrence up to z >= 10, then the Stirling-type asymptotic series.
inline double digamma(double z) {
  if (!(z > 0.0)) throw DomainError("digamma: argument must be positive, got " + std::to_string(z));
  double shift = 0.0;
  while (z < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const double r = 1.0 / (z * z);
  // B_{2k} / (2k) for k = 1..7
  const double series =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
  return shift + std::log(z) - 0.5 / z - series;
}

/// Generalized binomial coefficient r(r-1)...(r-n+1)/n!.
inline double real_binom(double r, unsigned n) {
  double out = 1.0;
  for (unsigned i = 0; i < n; ++i) out *= (r - i) / (i + 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function

inline constexpr double kHyp2f1Tolerance = 1e-9;

/// Power series sum_n (a)_n (b)_n / (c)_n z^n / n!, for |z| < 1 (or a
/// terminating series). The error estimate bounds the geometric tail.
inline SpecFunResult hyp2f1_series(double a, double b, double c, double z, std::size_t max_terms = 2'000'000) {
  using specfun_detail::CompensatedSum;
  if (specfun_detail::is_nonpositive_integer(c)) throw DomainError("hyp2f1: c must not be a nonpositive integer");
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  const double az = std::abs(z);
  const double settle = std::abs(a) + std::abs(b) + std::abs(c) + 2.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double nn = static_cast<double>(n);
    term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0)) * z;
    sum.add(term);
    if (term == 0.0) return {sum.value(), 0.0};
    if (nn + 1.0 > settle) {
      const double ratio = std::abs((a + nn + 1.0) * (b + nn + 1.0) / ((c + nn + 1.0) * (nn + 2.0))) * az;
      const double r = std::max(ratio, az);
      if (r < 1.0) {
        const double tail = std::abs(term) * r / (1.0 - r);
        const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(sum.value());
        if (tail <= floor) return {sum.value(), tail + floor};
      }
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge", sum.value(), std::abs(term));
}

/// Euler integral representation, valid for c > b > 0:
///   Gamma(c)/(Gamma(b)Gamma(c-b)) * int_0^1 t^(b-1) (1-t)^(c-b-1) (1-tz)^(-a) dt.
/// The endpoint power singularities are removed by substitution on each half
/// of [0, 1] before adaptive Gauss-Kronrod quadrature.
inline SpecFunResult hyp2f1_euler(double a, double b, double c, double z) {
  if (!(c > b && b > 0.0)) throw DomainError("hyp2f1_euler: requires c > b > 0");
  if (z > 1.0) throw DomainError("hyp2f1_euler: z must be <= 1");
  const bool at_one = (z == 1.0);
  if (at_one && !(c - a - b > 0.0)) throw DomainError("hyp2f1: at z = 1 requires c - a - b > 0");

  const double p = b;                             // left exponent + 1
  const double q = at_one ? c - a - b : c - b;    // right exponent + 1
  const quad::Tolerance tol{1e-300, 1e-14, 2000};

  // Left half: t = w^(1/p) / 2 turns t^(b-1) dt into a constant measure.
  auto left = [&](double w) {
    const double t = 0.5 * std::pow(w, 1.0 / p);
    const double s = 1.0 - t;
    if (at_one) return std::pow(s, c - a - b - 1.0);
    return std::pow(s, c - b - 1.0) * std::pow(1.0 - t * z, -a);
  };
  // Right half: 1 - t = v^(1/q) / 2.
  auto right = [&](double v) {
    const double s = 0.5 * std::pow(v, 1.0 / q);
    const double t = 1.0 - s;
    if (at_one) return std::pow(t, b - 1.0);
    return std::pow(t, b - 1.0) * std::pow(1.0 - t * z, -a);
  };
  const auto l = quad::integrate(left, 0.0, 1.0, tol);
  const auto r = quad::integrate(right, 0.0, 1.0, tol);
  const double lw = std::pow(0.5, p) / p;
  const double rw = std::pow(0.5, q) / q;
  // Gamma(c)/(Gamma(b)Gamma(c-b)) through logs to avoid overflow.
  const double pref = std::exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b));
  const double value = pref * (lw * l.value + rw * r.value);
  const double err = pref * (lw * l.abs_error + rw * r.abs_error) + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  if (!(l.converged && r.converged)) throw ConvergenceError("hyp2f1: Euler integral did not converge", value, err);
  return {value, err};
}

namespace specfun_detail {

// Connection formula z -> 1 - z, for c - a - b not an integer.
inline SpecFunResult hyp2f1_one_minus_z(double a, double b, double c, double z) {
  const double w = 1.0 - z;
  const double s = c - a - b;
  const auto f1 = hyp2f1_series(a, b, 1.0 - s, w);
  const auto f2 = hyp2f1_series(c - a, c - b, 1.0 + s, w);
  // Gamma(c)Gamma(s)/(Gamma(c-a)Gamma(c-b)) and Gamma(c)Gamma(-s)/(Gamma(a)Gamma(b)).
  const double gc = 1.0 / reciprocal_gamma(c);
  const double A = gc / reciprocal_gamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
  const double B = gc / reciprocal_gamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
  const double ws = std::pow(w, s);
  const double value = A * f1.value + B * ws * f2.value;
  const double err = std::abs(A) * f1.est_abs_error + std::abs(B * ws) * f2.est_abs_error +
                     1e3 * std::numeric_limits<double>::epsilon() * (std::abs(A * f1.value) + std::abs(B * ws * f2.value));
  return {value, err};
}

}  // namespace specfun_detail

/// 2F1(a, b; c; z) for real arguments with z in [-1, 1].
///
/// |z| <= 1/2: power series. Otherwise the Euler integral when c > b > 0 (or
/// c > a > 0, using the symmetry in a and b); failing that, the Pfaff
/// transformation for z < 0 and the 1 - z connection formula for z > 0.
/// At z = 1 the series only converges for c - a - b > 0.
inline SpecFunResult hyp2f1(double a, double b, double c, double z) {
  using specfun_detail::is_nonpositive_integer;
  if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c must not be a nonpositive integer");
  if (!(z >= -1.0 && z <= 1.0)) throw DomainError("hyp2f1: z must lie in [-1, 1]");
  if (z == 1.0 && !(c - a - b > 0.0)) throw DomainError("hyp2f1: at z = 1 requires c - a - b > 0");
  if (z == 0.0) return {1.0, 0.0};

  SpecFunResult out;
  if (std::abs(z) <= 0.5 || is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    out = hyp2f1_series(a, b, c, z);
  } else if (z == 1.0) {
    // Gauss summation.
    const double s = c - a - b;
    const double v = (1.0 / reciprocal_gamma(c)) * (1.0 / reciprocal_gamma(s)) * reciprocal_gamma(c - a) *
                     reciprocal_gamma(c - b);
    out = {v, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(v)};
  } else if (c > b && b > 0.0) {
    out = hyp2f1_euler(a, b, c, z);
  } else if (c > a && a > 0.0) {
    out = hyp2f1_euler(b, a, c, z);
  } else if (z < 0.0) {
    // Pfaff: (1 - z)^-a 2F1(a, c - b; c; z / (z - 1)), |z / (z - 1)| <= 1/2.
    const auto inner = hyp2f1_series(a, c - b, c, z / (z - 1.0));
    const double scale = std::pow(1.0 - z, -a);
    out = {scale * inner.value, std::abs(scale) * inner.est_abs_error};
  } else {
    const double s = c - a - b;
    if (s != std::floor(s)) {
      out = specfun_detail::hyp2f1_one_minus_z(a, b, c, z);
    } else if (z < 1.0) {
      out = hyp2f1_series(a, b, c, z);
    } else {
      // z = 1, integer c - a - b > 0: Gauss summation.
      const double v = (1.0 / reciprocal_gamma(c)) * (1.0 / reciprocal_gamma(s)) * reciprocal_gamma(c - a) *
                       reciprocal_gamma(c - b);
      out = {v, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(v)};
    }
  }
  if (!(out.est_abs_error <= kHyp2f1Tolerance * std::max(1.0, std::abs(out.value))))
    throw ConvergenceError("hyp2f1: error estimate above tolerance", out.value, out.est_abs_error);
  return out;
}

// ---------------------------------------------------------------------------
// Even binomial series

namespace specfun_detail {

// Hurwitz zeta(sigma, q) for sigma > 1 and large q (Euler-Maclaurin).
inline double hurwitz_zeta_large_q(double sigma, double q) {
  const double qs = std::pow(q, -sigma);
  return q * qs / (sigma - 1.0) + 0.5 * qs + sigma * qs / (12.0 * q) -
         sigma * (sigma + 1.0) * (sigma + 2.0) * qs / (720.0 * q * q * q);
}

}  // namespace specfun_detail

/// S(s, alpha) = sum_{n>=1} binom(s, 2n) * 2 / (2n - alpha), for alpha in
/// (0, 2) and s in [-1, 1].
///
/// Terms are summed directly until |term| < term_tol or max_terms is hit; the
/// remainder is then added from the large-n expansion
///   binom(s, m) ~ m^(-s-1) / Gamma(-s) * (1 + G1/m + G2/m^2),  m = 2n,
/// summed termwise with Hurwitz zeta tails. Terms decay like n^(-2-s), so
/// for s < 0 the remainder after 10^4 terms is far from negligible.
inline SpecFunResult binomial_even_series(double s, double alpha, std::size_t max_terms = 10'000,
                                          double term_tol = 1e-14) {
  using specfun_detail::CompensatedSum;
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("binomial_even_series: alpha must lie in (0, 2)");
  CompensatedSum sum;
  double binom = 1.0;  // binom(s, m)
  std::size_t n = 0;
  double last_term = 0.0;
  const bool terminating = (s >= 0.0 && s == std::floor(s));
  for (std::size_t m = 1; n < max_terms; ++m) {
    binom *= (s - static_cast<double>(m) + 1.0) / static_cast<double>(m);
    if (m % 2 == 1) continue;
    ++n;
    last_term = 2.0 * binom / (static_cast<double>(m) - alpha);
    sum.add(last_term);
    if (terminating && binom == 0.0) return {sum.value(), 0.0};
    if (std::abs(last_term) < term_tol) break;
  }
  if (terminating) return {sum.value(), 0.0};

  // Remainder over n > N.
  const double a = -s;
  const double G1 = a * (a - 1.0) / 2.0;
  const double G2 = (a - 1.0) * (a - 2.0) / 2.0 * a * (3.0 * a - 1.0) / 12.0;
  const double H[3] = {1.0, G1 + alpha, G2 + G1 * alpha + alpha * alpha};
  const double K = 2.0 * reciprocal_gamma(a);
  const double q = static_cast<double>(n) + 1.0;
  double tail = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double p = a - 2.0 - j;  // exponent of m in the j-th term
    tail += H[j] * std::pow(2.0, p) * specfun_detail::hurwitz_zeta_large_q(-p, q);
  }
  tail *= K;
  // Next omitted order, bounded generously.
  const double p3 = a - 5.0;
  const double next = std::abs(K) * (std::abs(H[2]) * (std::abs(alpha) + std::abs(a) + 2.0) + 1.0) * 4.0 *
                      std::pow(2.0 * q, p3 + 1.0) / std::abs(p3 + 1.0);
  const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(n)) *
                          (std::abs(sum.value()) + std::abs(tail));
  return {sum.value() + tail, next + rounding};
}

}  // namespace stablike
