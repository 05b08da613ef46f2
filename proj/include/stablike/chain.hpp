#pragma once

// Stable-like chains on the real line: from state x the chain jumps by
// J ~ S_alpha(x)(0, gamma(x), delta(x)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stablike/errors.hpp"
#include "stablike/rng.hpp"
#include "stablike/stable.hpp"

namespace stablike {

namespace profile {

struct Constant {
  double value;
};
/// `left` on x < 0, `right` on x >= 0.
struct TwoValued {
  double left, right;
};
/// Period split into equal cells, cell i taking values[i].
struct Periodic {
  double period;
  std::vector<double> values;
};
/// values[i] on [breakpoints[i-1], breakpoints[i]); values.size() == breakpoints.size() + 1.
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> values;
};
/// Arbitrary function; the caller declares its range and its range at
/// infinity. Chains built from it are flagged unchecked.
struct Custom {
  std::function<double(double)> fn;
  double min, max, tail_min, tail_max;
  std::string label = "custom";
};

}  // namespace profile

class ProfileFn {
 public:
  using Rep = std::variant<profile::Constant, profile::TwoValued, profile::Periodic, profile::PiecewiseConstant, profile::Custom>;

  ProfileFn() : rep_(profile::Constant{1.0}) {}
  ProfileFn(Rep rep) : rep_(std::move(rep)) { check_shape(); }

  static ProfileFn constant(double v) { return ProfileFn(profile::Constant{v}); }
  static ProfileFn two_valued(double left, double right) { return ProfileFn(profile::TwoValued{left, right}); }
  static ProfileFn periodic(double period, std::vector<double> values) {
    return ProfileFn(profile::Periodic{period, std::move(values)});
  }
  static ProfileFn piecewise(std::vector<double> breakpoints, std::vector<double> values) {
    return ProfileFn(profile::PiecewiseConstant{std::move(breakpoints), std::move(values)});
  }
  static ProfileFn unchecked(profile::Custom c) { return ProfileFn(std::move(c)); }

  const Rep& rep() const { return rep_; }
  bool is_unchecked() const { return std::holds_alternative<profile::Custom>(rep_); }

  double operator()(double x) const {
    return std::visit(
        [x](const auto& r) -> double {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, profile::Constant>) {
            return r.value;
          } else if constexpr (std::is_same_v<T, profile::TwoValued>) {
            return x < 0.0 ? r.left : r.right;
          } else if constexpr (std::is_same_v<T, profile::Periodic>) {
            double m = std::fmod(x, r.period);
            if (m < 0.0) m += r.period;
            const auto n = r.values.size();
            auto i = static_cast<std::size_t>(m / r.period * static_cast<double>(n));
            return r.values[std::min(i, n - 1)];
          } else if constexpr (std::is_same_v<T, profile::PiecewiseConstant>) {
            const auto it = std::upper_bound(r.breakpoints.begin(), r.breakpoints.end(), x);
            return r.values[static_cast<std::size_t>(it - r.breakpoints.begin())];
          } else {
            return r.fn(x);
          }
        },
        rep_);
  }

  /// Every value the profile takes (declared bounds for custom profiles).
  std::vector<double> values() const {
    return std::visit(
        [](const auto& r) -> std::vector<double> {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, profile::Constant>) return {r.value};
          else if constexpr (std::is_same_v<T, profile::TwoValued>) return {r.left, r.right};
          else if constexpr (std::is_same_v<T, profile::Periodic>) return r.values;
          else if constexpr (std::is_same_v<T, profile::PiecewiseConstant>) return r.values;
          else return {r.min, r.max};
        },
        rep_);
  }

  /// Values taken on a neighbourhood of infinity (both directions).
  std::vector<double> tail_values() const {
    return std::visit(
        [](const auto& r) -> std::vector<double> {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, profile::Constant>) return {r.value};
          else if constexpr (std::is_same_v<T, profile::TwoValued>) return {r.left, r.right};
          else if constexpr (std::is_same_v<T, profile::Periodic>) return r.values;
          else if constexpr (std::is_same_v<T, profile::PiecewiseConstant>) return {r.values.front(), r.values.back()};
          else return {r.tail_min, r.tail_max};
        },
        rep_);
  }

  double inf() const { return min_of(values()); }
  double sup() const { return max_of(values()); }
  double liminf() const { return min_of(tail_values()); }
  double limsup() const { return max_of(tail_values()); }

 private:
  static double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
  static double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

  void check_shape() const {
    if (const auto* p = std::get_if<profile::Periodic>(&rep_)) {
      if (!(p->period > 0.0) || p->values.empty()) throw PreconditionError("periodic profile needs period > 0 and values");
    } else if (const auto* q = std::get_if<profile::PiecewiseConstant>(&rep_)) {
      if (q->values.size() != q->breakpoints.size() + 1) throw PreconditionError("piecewise profile needs one more value than breakpoints");
      if (!std::is_sorted(q->breakpoints.begin(), q->breakpoints.end())) throw PreconditionError("piecewise breakpoints must be sorted");
    } else if (const auto* c = std::get_if<profile::Custom>(&rep_)) {
      if (!c->fn) throw PreconditionError("custom profile needs a function");
    }
  }

  Rep rep_;
};

struct ChainSpec {
  ProfileFn alpha_profile = ProfileFn::constant(1.5);
  ProfileFn gamma_profile = ProfileFn::constant(1.0);
  ProfileFn delta_profile = ProfileFn::constant(0.0);
  // The uniformity constants of the tail and infimum conditions are not
  // computed; finitely-valued profiles satisfy them globally.
  std::optional<double> k0, l0;

  bool unchecked() const {
    return alpha_profile.is_unchecked() || gamma_profile.is_unchecked() || delta_profile.is_unchecked();
  }

  /// Throws ValidationError listing every violated range.
  void validate() const {
    std::vector<std::string> problems;
    for (double a : alpha_profile.values())
      if (!(a > 0.0 && a < 2.0)) problems.push_back("alpha profile value " + std::to_string(a) + " outside (0, 2)");
    for (double g : gamma_profile.values())
      if (!(g > 0.0) || !std::isfinite(g)) problems.push_back("gamma profile value " + std::to_string(g) + " must be positive and finite");
    for (double d : delta_profile.values())
      if (!std::isfinite(d)) problems.push_back("delta profile value must be finite");
    if (!problems.empty()) throw ValidationError(std::move(problems));
  }

  static ChainSpec sas_walk(double alpha, double gamma = 1.0, double delta = 0.0) {
    return {ProfileFn::constant(alpha), ProfileFn::constant(gamma), ProfileFn::constant(delta)};
  }
};

inline double alpha_at(const ChainSpec& s, double x) { return s.alpha_profile(x); }
inline double gamma_at(const ChainSpec& s, double x) { return s.gamma_profile(x); }
inline double delta_at(const ChainSpec& s, double x) { return s.delta_profile(x); }
inline StableParams params_at(const ChainSpec& s, double x) { return {alpha_at(s, x), gamma_at(s, x), delta_at(s, x)}; }
inline double c_at(const ChainSpec& s, double x) { return tail_constant(params_at(s, x)); }

/// f_x(y): density of the jump y from state x.
inline double jump_density(const ChainSpec& s, double x, double y) { return sas_density(params_at(s, x), y); }

inline double step(const ChainSpec& s, double x, RandomStream& rng) { return x + sas_sample(params_at(s, x), rng); }

struct Trajectory {
  double start = 0.0;
  std::vector<double> states;  // states[0] is the state after the first step
  std::uint64_t seed = 0;
};

/// Stream used by simulate() for a given seed.
inline RandomStream trajectory_stream(std::uint64_t seed) { return RandomStream(seed); }

inline Trajectory simulate(const ChainSpec& s, double x0, std::size_t n_steps, std::uint64_t seed) {
  if (n_steps < 1) throw PreconditionError("simulate: n_steps must be at least 1");
  Trajectory t{x0, {}, seed};
  t.states.reserve(n_steps);
  auto rng = trajectory_stream(seed);
  double x = x0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    x = step(s, x, rng);
    t.states.push_back(x);
  }
  return t;
}

}  // namespace stablike
