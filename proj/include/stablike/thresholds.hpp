#pragma once

// Critical constants R1(alpha), R2(alpha, beta) and T(alpha, beta) against
// which the normalized drift integrals are compared.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stablike/errors.hpp"
#include "stablike/specfun.hpp"

namespace stablike {

enum class ThresholdKind { R1, R2, T };

inline const char* to_string(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::R1: return "R1";
    case ThresholdKind::R2: return "R2";
    case ThresholdKind::T: return "T";
  }
  return "?";
}

struct ThresholdValue {
  ThresholdKind kind = ThresholdKind::R1;
  double alpha = 0.0;
  std::optional<double> beta;
  double value = 0.0;
  double est_abs_error = 0.0;

  /// True when the sign of the value cannot be trusted.
  bool indistinguishable_from_zero() const { return std::abs(value) <= est_abs_error; }
};

/// R1(alpha) = -pi cot(pi alpha / 2) / alpha, written as
/// pi tan(pi (alpha - 1) / 2) / alpha so that R1(1) is exactly zero.
inline double r1(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("r1: alpha must lie in (0, 2)");
  return std::numbers::pi * std::tan(0.5 * std::numbers::pi * (alpha - 1.0)) / alpha;
}

inline ThresholdValue r1_value(double alpha) {
  const double v = r1(alpha);
  return {ThresholdKind::R1, alpha, std::nullopt, v, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v)};
}

/// R2(alpha, beta) = -S(beta, alpha) + 2/alpha
///                   - [2F1(-b, a-b; 1+a-b; -1) + 2F1(-b, a-b; 1+a-b; 1)] / (a - b)
/// with S the even binomial series. Requires beta in (0, 1], beta < alpha < 2.
inline ThresholdValue r2(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("r2: alpha must lie in (0, 2)");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("r2: beta must lie in (0, 1]");
  if (!(beta < alpha)) throw DomainError("r2: beta must be smaller than alpha");
  const auto series = binomial_even_series(beta, alpha);
  const double a = -beta, b = alpha - beta, c = 1.0 + alpha - beta;
  const auto fm = hyp2f1(a, b, c, -1.0);
  const auto fp = hyp2f1(a, b, c, 1.0);
  const double value = -series.value + 2.0 / alpha - (fm.value + fp.value) / b;
  const double err = series.est_abs_error + 2.0 * (fm.est_abs_error + fp.est_abs_error) / b +
                     8.0 * std::numeric_limits<double>::epsilon() * (std::abs(series.value) + 2.0 / alpha + std::abs(fm.value + fp.value) / b);
  return {ThresholdKind::R2, alpha, beta, value, err};
}

/// T(alpha, beta) = S(-beta, alpha) - 2/alpha
///                  + [2F1(b, a+b; 1+a+b; 1) + 2F1(b, a+b; 1+a+b; -1)] / (a + b)
/// for alpha in (0, 2), beta in (0, 1).
inline ThresholdValue t(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("t: alpha must lie in (0, 2)");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("t: beta must lie in (0, 1)");
  const auto series = binomial_even_series(-beta, alpha);
  const double a = beta, b = alpha + beta, c = 1.0 + alpha + beta;
  const auto fp = hyp2f1(a, b, c, 1.0);
  const auto fm = hyp2f1(a, b, c, -1.0);
  const double value = series.value - 2.0 / alpha + (fp.value + fm.value) / b;
  const double err = series.est_abs_error + 2.0 * (fm.est_abs_error + fp.est_abs_error) / b +
                     8.0 * std::numeric_limits<double>::epsilon() * (std::abs(series.value) + 2.0 / alpha + std::abs(fm.value + fp.value) / b);
  return {ThresholdKind::T, alpha, beta, value, err};
}

/// R2(alpha, beta) / beta for each beta of the grid.
inline std::vector<double> r2_over_beta_profile(double alpha, std::span<const double> beta_grid) {
  std::vector<double> out;
  out.reserve(beta_grid.size());
  for (double b : beta_grid) out.push_back(r2(alpha, b).value / b);
  return out;
}

}  // namespace stablike
