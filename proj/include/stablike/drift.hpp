#pragma once

// Normalized drift-criterion left-hand sides: truncated jump integrals of
// the test-function kernels and their tail scans over (x, delta, d) grids.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stablike/chain.hpp"
#include "stablike/errors.hpp"
#include "stablike/io.hpp"
#include "stablike/parallel.hpp"
#include "stablike/quadrature.hpp"
#include "stablike/stable.hpp"
#include "stablike/thresholds.hpp"

namespace stablike {

enum class KernelKind { LogShift, PowerBeta, BoundedBeta, FirstMoment, SecondMoment };

struct DriftKernel {
  KernelKind kind = KernelKind::LogShift;
  double beta = 0.0;

  static DriftKernel log_shift() { return {KernelKind::LogShift, 0.0}; }
  static DriftKernel power(double b) { return {KernelKind::PowerBeta, b}; }
  static DriftKernel bounded(double b) { return {KernelKind::BoundedBeta, b}; }
  static DriftKernel first_moment() { return {KernelKind::FirstMoment, 0.0}; }
  static DriftKernel second_moment() { return {KernelKind::SecondMoment, 0.0}; }

  void validate() const {
    if (kind == KernelKind::PowerBeta && !(beta > 0.0 && beta <= 1.0)) throw DomainError("PowerBeta kernel needs beta in (0, 1]");
    if (kind == KernelKind::BoundedBeta && !(beta > 0.0 && beta < 1.0)) throw DomainError("BoundedBeta kernel needs beta in (0, 1)");
  }

  /// Scale s such that the kernel is a function of y / s.
  double scale(double x) const {
    switch (kind) {
      case KernelKind::LogShift:
      case KernelKind::BoundedBeta: return 1.0 + std::abs(x);
      case KernelKind::PowerBeta: return std::abs(x);
      default: return 1.0;
    }
  }

  /// g(y) for the jump y from state x, directly from the definition.
  double operator()(double x, double y) const {
    const double t = (x < 0.0 ? -y : y) / scale(x);
    switch (kind) {
      case KernelKind::LogShift: return std::log1p(t);
      case KernelKind::PowerBeta: return std::pow(1.0 + t, beta) - 1.0;
      case KernelKind::BoundedBeta: return 1.0 - std::pow(1.0 + t, -beta);
      case KernelKind::FirstMoment: return y;
      case KernelKind::SecondMoment: return y * y;
    }
    return 0.0;
  }
};

inline const char* to_string(KernelKind k) {
  switch (k) {
    case KernelKind::LogShift: return "log_shift";
    case KernelKind::PowerBeta: return "power_beta";
    case KernelKind::BoundedBeta: return "bounded_beta";
    case KernelKind::FirstMoment: return "first_moment";
    case KernelKind::SecondMoment: return "second_moment";
  }
  return "?";
}

namespace drift_detail {

struct EvenOdd {
  double even, odd;
};

/// Even and odd parts of (1 + t)^r - 1 for 0 <= t < 1, by the binomial
/// series near 0 where the direct form cancels.
inline EvenOdd power_parts(double r, double t) {
  if (t < 0.1) {
    double even = 0.0, odd = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= (r - (k - 1)) / k * t;
      (k % 2 == 0 ? even : odd) += term;
      if (std::abs(term) <= 1e-18 * (std::abs(even) + std::abs(odd))) break;
    }
    return {even, odd};
  }
  const double p = std::pow(1.0 + t, r), m = std::pow(1.0 - t, r);
  return {0.5 * (p + m) - 1.0, 0.5 * (p - m)};
}

/// Even/odd parts of the kernel as a function of t = |y| / scale.
inline EvenOdd kernel_parts(const DriftKernel& k, double t) {
  switch (k.kind) {
    case KernelKind::LogShift: return {0.5 * std::log1p(-t * t), std::atanh(t)};
    case KernelKind::PowerBeta: return power_parts(k.beta, t);
    case KernelKind::BoundedBeta: {
      const auto p = power_parts(-k.beta, t);
      return {-p.even, -p.odd};
    }
    case KernelKind::FirstMoment: return {0.0, t};
    case KernelKind::SecondMoment: return {t * t, 0.0};
  }
  return {0.0, 0.0};
}

}  // namespace drift_detail

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Breakpoints on [0, L]: a geometric ladder in units of gamma plus the
/// location of the shifted peak. All pieces but the last are independent
/// of x, which lets density caches hit across scan points.
inline std::vector<double> drift_breakpoints(const StableParams& p, double L) {
  std::vector<double> pts{0.0};
  for (double q = p.gamma_scale / 16.0; q < L; q *= 2.0) pts.push_back(q);
  if (p.delta_shift != 0.0 && std::abs(p.delta_shift) < L) pts.push_back(std::abs(p.delta_shift));
  pts.push_back(L);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// int_{-delta|x|}^{delta|x|} g(y) f_x(y) dy, folded onto [0, delta|x|] as
/// E(y)(f(y) + f(-y)) + sgn(x) O(y)(f(y) - f(-y)) so that odd kernels vanish
/// exactly for symmetric jump laws.
inline IntegralResult truncated_integral(const ChainSpec& spec, double x, double delta, const DriftKernel& kernel,
                                         DensityCache* cache = nullptr) {
  if (x == 0.0) throw PreconditionError("truncated_integral: x must be nonzero");
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("truncated_integral: delta must lie in (0, 1)");
  kernel.validate();
  const auto p = params_at(spec, x);
  const double L = delta * std::abs(x);
  // Kernels other than FirstMoment see the outward jump sgn(x) y.
  const double s = (x < 0.0 && kernel.kind != KernelKind::FirstMoment) ? -1.0 : 1.0;
  const double scale = kernel.scale(x);
  const bool symmetric = (p.delta_shift == 0.0);
  double dens_err = 0.0;
  auto dens = [&](double y) {
    const auto r = cache ? cache->density(p, y) : sas_density_result(p, y);
    dens_err = std::max(dens_err, r.est_abs_error / std::max(r.value, std::numeric_limits<double>::min()));
    return r.value;
  };
  auto integrand = [&](double y) {
    const auto parts = drift_detail::kernel_parts(kernel, y / scale);
    const double fp = dens(y);
    if (symmetric) return 2.0 * parts.even * fp;  // odd part cancels exactly
    const double fm = dens(-y);
    return parts.even * (fp + fm) + s * parts.odd * (fp - fm);
  };
  const quad::Tolerance tol{1e-300, 1e-10, 400};
  const auto r = quad::integrate_pieces(integrand, drift_breakpoints(p, L), tol);
  if (!r.converged) throw ConvergenceError("truncated_integral: quadrature did not converge", r.value, r.abs_error);
  return {r.value, r.abs_error + dens_err * std::abs(r.value)};
}

enum class ConditionId { C12, C13, C14, C15, C16, E1, E2, E3, E4, N12, N13, F24, F25 };

inline const char* to_string(ConditionId c) {
  switch (c) {
    case ConditionId::C12: return "C12";
    case ConditionId::C13: return "C13";
    case ConditionId::C14: return "C14";
    case ConditionId::C15: return "C15";
    case ConditionId::C16: return "C16";
    case ConditionId::E1: return "E1";
    case ConditionId::E2: return "E2";
    case ConditionId::E3: return "E3";
    case ConditionId::E4: return "E4";
    case ConditionId::N12: return "N12";
    case ConditionId::N13: return "N13";
    case ConditionId::F24: return "F24";
    case ConditionId::F25: return "F25";
  }
  return "?";
}

inline ConditionId condition_from_string(const std::string& s) {
  for (auto c : {ConditionId::C12, ConditionId::C13, ConditionId::C14, ConditionId::C15, ConditionId::C16, ConditionId::E1,
                 ConditionId::E2, ConditionId::E3, ConditionId::E4, ConditionId::N12, ConditionId::N13, ConditionId::F24,
                 ConditionId::F25})
    if (s == to_string(c)) return c;
  throw PreconditionError("unknown condition id: " + s);
}

enum class Direction { Less, Greater };

struct ConditionInfo {
  KernelKind kernel;
  Direction direction;
  ThresholdKind threshold;
  bool threshold_at_liminf;  // else limsup of alpha
  bool uses_d;
  bool uses_beta;
  bool first_moment_form;  // |x|^(alpha-1) sgn(x) normalization
};

inline ConditionInfo condition_info(ConditionId c) {
  using K = KernelKind;
  using D = Direction;
  using T = ThresholdKind;
  switch (c) {
    case ConditionId::C12: return {K::LogShift, D::Less, T::R1, true, false, false, false};
    case ConditionId::C13: return {K::PowerBeta, D::Less, T::R2, true, false, true, false};
    case ConditionId::C14: return {K::BoundedBeta, D::Greater, T::T, false, false, true, false};
    case ConditionId::C15: return {K::LogShift, D::Less, T::R1, true, true, false, false};
    case ConditionId::C16: return {K::PowerBeta, D::Less, T::R2, true, true, true, false};
    case ConditionId::E1: return {K::FirstMoment, D::Less, T::R1, true, false, false, true};
    case ConditionId::E2: return {K::FirstMoment, D::Greater, T::R1, false, false, false, true};
    case ConditionId::E3: return {K::FirstMoment, D::Less, T::R1, true, true, false, true};
    case ConditionId::E4: return {K::FirstMoment, D::Less, T::R1, true, true, true, true};
    case ConditionId::N12: return {K::LogShift, D::Greater, T::R1, false, false, false, false};
    case ConditionId::N13: return {K::PowerBeta, D::Greater, T::R2, false, false, true, false};
    case ConditionId::F24: return {K::LogShift, D::Less, T::R1, true, true, false, false};
    case ConditionId::F25: return {K::PowerBeta, D::Less, T::R2, true, true, true, false};
  }
  throw PreconditionError("unknown condition");
}

/// Extra inputs of a condition: beta (when it has one) and the weight g(x)
/// of the f-ergodicity forms (g = 1 when absent).
struct ConditionParams {
  std::optional<double> beta;
  std::optional<ProfileFn> weight;
};

struct DriftPoint {
  double x = 0.0;
  double delta = 0.0;
  double d = 0.0;
  double raw_integral = 0.0;
  double normalized_lhs = 0.0;
  double quadrature_error = 0.0;  // on the normalized scale
};

namespace drift_detail {

inline DriftKernel kernel_for(ConditionId c, const ConditionParams& cp) {
  const auto info = condition_info(c);
  if (info.uses_beta && !info.first_moment_form && !cp.beta) throw PreconditionError(std::string(to_string(c)) + " needs beta");
  switch (info.kernel) {
    case KernelKind::PowerBeta: return DriftKernel::power(*cp.beta);
    case KernelKind::BoundedBeta: return DriftKernel::bounded(*cp.beta);
    default: return {info.kernel, 0.0};
  }
}

/// Assembles the left-hand side from an already computed truncated integral.
inline DriftPoint assemble(const ChainSpec& spec, ConditionId c, const ConditionParams& cp, double x, double delta, double d,
                           const IntegralResult& I) {
  const auto info = condition_info(c);
  const double ax = std::abs(x);
  const double alpha = alpha_at(spec, x);
  const double cx = c_at(spec, x);
  const double s = x < 0.0 ? -1.0 : 1.0;
  double inner = I.value;
  double pref;
  if (info.first_moment_form) {
    pref = std::pow(ax, alpha - 1.0) / cx;
    inner = s * I.value;
  } else {
    pref = std::pow(ax, alpha) / cx;
  }
  if (info.uses_d) {
    const double w = cp.weight ? (*cp.weight)(x) : 1.0;
    switch (c) {
      case ConditionId::C15: inner += d; break;
      case ConditionId::C16: inner += d * std::pow(ax, -*cp.beta); break;
      case ConditionId::E3: inner += d * ax; break;
      case ConditionId::E4: inner += d * std::pow(ax, 1.0 - *cp.beta) / *cp.beta; break;
      case ConditionId::F24: inner += d * w; break;
      case ConditionId::F25: inner += d * w * std::pow(ax, -*cp.beta); break;
      default: break;
    }
  }
  return {x, delta, d, I.value, pref * inner, pref * I.abs_error};
}

}  // namespace drift_detail

/// Left-hand side of the named condition at one (x, delta, d).
inline DriftPoint normalized_lhs(const ChainSpec& spec, double x, double delta, double d, ConditionId c,
                                 const ConditionParams& cp = {}, DensityCache* cache = nullptr) {
  const auto info = condition_info(c);
  if (info.uses_beta && !cp.beta) throw PreconditionError(std::string(to_string(c)) + " needs beta");
  if (d < 0.0) throw PreconditionError("normalized_lhs: d must be nonnegative");
  const auto kernel = drift_detail::kernel_for(c, cp);
  const auto I = truncated_integral(spec, x, delta, kernel, cache);
  return drift_detail::assemble(spec, c, cp, x, delta, d, I);
}

struct TailScanReport {
  ConditionId condition_id = ConditionId::C12;
  std::optional<double> beta;
  double threshold_alpha = 0.0;
  std::vector<DriftPoint> points;
  double tail_sup_estimate = 0.0;
  double tail_inf_estimate = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
  double scan_error = 0.0;       // quadrature + threshold error + delta-ladder residual
  bool trend_monotone = true;    // successive delta levels move monotonically
  std::vector<double> level_sup;  // per delta level, at the smallest d
  std::vector<double> level_inf;

  /// Margin too small relative to the numerical uncertainty.
  bool inconclusive() const { return !(margin > 2.0 * scan_error); }
  bool supports() const { return margin > 0.0 && !inconclusive(); }
};

/// |x| log-spaced on [10^lo, 10^hi] with `per_decade` points per decade,
/// both signs, sorted.
inline std::vector<double> default_x_grid(double lo_decade = 2.0, double hi_decade = 5.0, int per_decade = 4) {
  std::vector<double> g;
  const int n = static_cast<int>(std::lround((hi_decade - lo_decade) * per_decade));
  for (int i = 0; i <= n; ++i) {
    const double v = std::pow(10.0, lo_decade + static_cast<double>(i) / per_decade);
    g.push_back(v);
    g.push_back(-v);
  }
  std::sort(g.begin(), g.end());
  return g;
}

inline std::vector<double> default_delta_grid() { return {0.5, 0.2, 0.1, 0.05}; }
inline std::vector<double> default_d_grid() { return {0.1, 0.01, 0.001}; }

struct ScanGrids {
  std::vector<double> x = default_x_grid();
  std::vector<double> delta = default_delta_grid();
  std::vector<double> d = default_d_grid();
};

/// Threshold value for a condition on this chain.
inline ThresholdValue condition_threshold(const ChainSpec& spec, ConditionId c, const ConditionParams& cp) {
  const auto info = condition_info(c);
  const double a = info.threshold_at_liminf ? spec.alpha_profile.liminf() : spec.alpha_profile.limsup();
  switch (info.threshold) {
    case ThresholdKind::R1: return r1_value(a);
    case ThresholdKind::R2: return r2(a, *cp.beta);
    case ThresholdKind::T: return t(a, *cp.beta);
  }
  throw PreconditionError("unknown threshold");
}

inline void check_scan_preconditions(const ChainSpec& spec, const ScanGrids& g, ConditionId c, const ConditionParams& cp) {
  spec.validate();
  if (g.x.size() < 2) throw PreconditionError("tail_scan: x grid needs at least two points");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double x : g.x) {
    if (x == 0.0 || !std::isfinite(x)) throw PreconditionError("tail_scan: x grid points must be finite and nonzero");
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  if (!(hi >= 1e3 * lo)) throw PreconditionError("tail_scan: x grid must span at least three decades");
  if (g.delta.empty() || g.d.empty()) throw PreconditionError("tail_scan: empty delta or d grid");
  for (std::size_t i = 0; i < g.delta.size(); ++i) {
    if (!(g.delta[i] > 0.0 && g.delta[i] < 1.0)) throw PreconditionError("tail_scan: delta values must lie in (0, 1)");
    if (i > 0 && !(g.delta[i] < g.delta[i - 1])) throw PreconditionError("tail_scan: delta grid must be decreasing");
  }
  for (std::size_t i = 0; i < g.d.size(); ++i) {
    if (!(g.d[i] >= 0.0)) throw PreconditionError("tail_scan: d values must be nonnegative");
    if (i > 0 && !(g.d[i] < g.d[i - 1])) throw PreconditionError("tail_scan: d grid must be decreasing");
  }
  const auto info = condition_info(c);
  if (info.uses_beta) {
    if (!cp.beta) throw PreconditionError(std::string("tail_scan: ") + to_string(c) + " needs beta");
    const double b = *cp.beta;
    const double inf_alpha = spec.alpha_profile.inf();
    const double lim = info.threshold_at_liminf ? spec.alpha_profile.liminf() : spec.alpha_profile.limsup();
    switch (c) {
      case ConditionId::C13:
        if (!(b > 0.0 && b <= 1.0 && b < lim)) throw PreconditionError("C13: beta must lie in (0, 1] and below liminf alpha");
        break;
      case ConditionId::C14:
        if (!(b > 0.0 && b < 1.0)) throw PreconditionError("C14: beta must lie in (0, 1)");
        break;
      case ConditionId::C16:
      case ConditionId::F25:
      case ConditionId::N13:
        if (!(b > 0.0 && b <= 1.0 && b < inf_alpha && b < lim))
          throw PreconditionError(std::string(to_string(c)) + ": beta must lie in (0, 1] and below inf alpha");
        break;
      case ConditionId::E4:
        if (!(b > 0.0)) throw PreconditionError("E4: beta must be positive");
        break;
      default: break;
    }
  }
  if (c == ConditionId::C14 || c == ConditionId::E2 || c == ConditionId::N12 || c == ConditionId::N13) {
    if (!(spec.alpha_profile.limsup() < 2.0)) throw PreconditionError("condition needs limsup alpha < 2");
  }
  if ((c == ConditionId::F24 || c == ConditionId::F25) && cp.weight) {
    for (double w : cp.weight->values())
      if (!(w >= 1.0)) throw PreconditionError("weight profile must be >= 1");
  }
}

struct ScanOptions {
  unsigned threads = 0;
  DensityCache* cache = nullptr;  // shared memo; a private one is used when null
};

/// Evaluates the condition on the full grid and summarizes its tail.
inline TailScanReport tail_scan(const ChainSpec& spec, const ScanGrids& grids, ConditionId c, const ConditionParams& cp = {},
                                ScanOptions opts = {}) {
  check_scan_preconditions(spec, grids, c, cp);
  const auto info = condition_info(c);
  const std::vector<double> d_levels = info.uses_d ? grids.d : std::vector<double>{0.0};
  const auto kernel = drift_detail::kernel_for(c, cp);

  std::unique_ptr<DensityCache> own;
  if (!opts.cache) {
    own = std::make_unique<DensityCache>();
    opts.cache = own.get();
  }

  const std::size_t nx = grids.x.size(), nd = grids.delta.size();
  std::vector<IntegralResult> integrals(nx * nd);
  parallel_for(
      nx * nd,
      [&](std::size_t k) {
        const double x = grids.x[k % nx];
        const double delta = grids.delta[k / nx];
        integrals[k] = truncated_integral(spec, x, delta, kernel, opts.cache);
      },
      opts.threads);

  TailScanReport rep;
  rep.condition_id = c;
  rep.beta = info.uses_beta ? cp.beta : std::nullopt;
  rep.threshold_alpha = info.threshold_at_liminf ? spec.alpha_profile.liminf() : spec.alpha_profile.limsup();
  const auto thr = condition_threshold(spec, c, cp);
  rep.threshold = thr.value;

  // Outer half of the grid by |x|.
  std::vector<double> mags;
  for (double x : grids.x) mags.push_back(std::abs(x));
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  const double cut = mags[mags.size() / 2];

  const double inf = std::numeric_limits<double>::infinity();
  double sup_final = -inf, inf_final = inf, err_final = 0.0;
  for (std::size_t id = 0; id < d_levels.size(); ++id) {
    for (std::size_t j = 0; j < nd; ++j) {
      double lsup = -inf, linf = inf, lerr = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        const auto pt = drift_detail::assemble(spec, c, cp, grids.x[i], grids.delta[j], d_levels[id], integrals[j * nx + i]);
        rep.points.push_back(pt);
        if (std::abs(pt.x) >= cut) {
          lsup = std::max(lsup, pt.normalized_lhs);
          linf = std::min(linf, pt.normalized_lhs);
          lerr = std::max(lerr, pt.quadrature_error);
        }
      }
      if (id + 1 == d_levels.size()) {
        rep.level_sup.push_back(lsup);
        rep.level_inf.push_back(linf);
        if (j + 1 == nd) {
          sup_final = lsup;
          inf_final = linf;
          err_final = lerr;
        }
      }
    }
  }
  rep.tail_sup_estimate = sup_final;
  rep.tail_inf_estimate = inf_final;
  rep.margin = info.direction == Direction::Less ? rep.threshold - sup_final : inf_final - rep.threshold;

  const auto& lv = info.direction == Direction::Less ? rep.level_sup : rep.level_inf;
  double residual = 0.0;
  if (lv.size() >= 2) residual = std::abs(lv.back() - lv[lv.size() - 2]);
  bool up = true, down = true;
  for (std::size_t j = 1; j < lv.size(); ++j) {
    up = up && lv[j] >= lv[j - 1];
    down = down && lv[j] <= lv[j - 1];
  }
  rep.trend_monotone = up || down;
  rep.scan_error = err_final + thr.est_abs_error + residual;
  if (!std::isfinite(rep.margin)) rep.scan_error = inf;
  return rep;
}

/// CSV rows: condition, x, delta, d, raw, normalized, error.
inline void write_scan_csv(std::ostream& os, const TailScanReport& rep) {
  io::csv_row(os, {"condition", "x", "delta", "d", "raw", "normalized", "error"});
  for (const auto& p : rep.points)
    io::csv_row(os, {to_string(rep.condition_id), io::fmt(p.x), io::fmt(p.delta), io::fmt(p.d), io::fmt(p.raw_integral),
                     io::fmt(p.normalized_lhs), io::fmt(p.quadrature_error)});
}

enum class TestFunction { Log, Power, Bounded };

/// Expected increment E[V(X1) - V(X0) | X0 = x] of the test function
/// V = log(1+|x|), |x|^beta or 1 - (1+|x|)^-beta. Jumps beyond y_max use the
/// power-law tail c(x)|y|^(-alpha-1) in place of the density.
inline IntegralResult delta_v(const ChainSpec& spec, double x, TestFunction tf, double beta = 0.0,
                              std::optional<double> y_max = std::nullopt) {
  const auto p = params_at(spec, x);
  if (tf == TestFunction::Power && !(beta > 0.0 && beta < p.alpha))
    throw DomainError("delta_v: Power test function needs 0 < beta < alpha(x) for a finite increment");
  if (tf == TestFunction::Bounded && !(beta > 0.0)) throw DomainError("delta_v: Bounded test function needs beta > 0");
  auto V = [tf, beta](double z) {
    const double a = std::abs(z);
    switch (tf) {
      case TestFunction::Log: return std::log1p(a);
      case TestFunction::Power: return std::pow(a, beta);
      case TestFunction::Bounded: return -std::expm1(-beta * std::log1p(a));
    }
    return 0.0;
  };
  const double vx = V(x);
  const double Y = y_max.value_or(1e6 * (1.0 + std::abs(x)));
  auto h = [&](double y) { return (V(x + y) - vx) * sas_density(p, y); };

  std::vector<double> pts{-Y, Y, 0.0, p.delta_shift, -x};
  for (double q = p.gamma_scale / 16.0; q < Y; q *= 2.0) {
    pts.push_back(q);
    pts.push_back(-q);
    pts.push_back(-x + q);
    pts.push_back(-x - q);
  }
  std::erase_if(pts, [Y](double v) { return !(v >= -Y && v <= Y); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const auto body = quad::integrate_pieces(h, pts, {1e-300, 1e-10, 400});

  // Tail: y = Y u^(-1/alpha) maps c|y|^(-alpha-1) dy on |y| > Y to c Y^-alpha / alpha du.
  const double c = tail_constant(p);
  auto tail_integrand = [&](double u) {
    const double y = Y * std::pow(u, -1.0 / p.alpha);
    return (V(x + y) - vx) + (V(x - y) - vx);
  };
  const auto tail = quad::integrate(tail_integrand, 0.0, 1.0, {1e-300, 1e-10, 400});
  const double tail_scale = c * std::pow(Y, -p.alpha) / p.alpha;
  const double value = body.value + tail_scale * tail.value;
  return {value, body.abs_error + tail_scale * tail.abs_error};
}

}  // namespace stablike
