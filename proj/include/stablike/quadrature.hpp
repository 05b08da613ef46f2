#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace stablike::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct Tolerance {
  double abs = 1e-300;
  double rel = 1e-12;
  std::size_t max_intervals = 400;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980268464, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error, abs_value;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[10];
  double resabs = std::abs(resk);
  double resg = 0.0;
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  return {a, b, resk, err, resabs};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration of f over [a, b].
/// The error target is max(tol.abs, tol.rel * |I|), or tol.rel * ∫|f| when
/// the integrand changes sign enough that |I| is much smaller than ∫|f|.
template <class F>
QuadResult integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk21(f, a, b);
  out.evaluations = 21;
  double total = first.value, total_err = first.error, total_abs = first.abs_value;
  heap.push(first);
  std::size_t intervals = 1;
  // Each GK21 panel reports at least 50 eps of its mass, so tighter relative
  // targets are unreachable.
  const double rel = std::max(tol.rel, 100.0 * std::numeric_limits<double>::epsilon());
  auto target = [&] { return std::max(tol.abs, rel * std::abs(total)); };
  while (total_err > target()) {
    if (intervals >= tol.max_intervals) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      out.converged = false;
      heap.push(worst);
      break;
    }
    auto left = detail::gk21(f, worst.a, mid);
    auto right = detail::gk21(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum from the pieces to shed accumulated update rounding.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  out.value = v;
  out.abs_error = e;
  if (!out.converged && e <= rel * total_abs) out.converged = true;
  return out;
}

/// Integrates over consecutive [points[i], points[i+1]] and sums.
template <class F>
QuadResult integrate_pieces(F&& f, const std::vector<double>& points, const Tolerance& tol = {}) {
  QuadResult out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    auto r = integrate(f, points[i], points[i + 1], tol);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

/// Breakpoints 0 = p0 < first < 2*first < 4*first < ... < end (geometric
/// ladder); suits integrands with structure near the origin and slowly
/// decaying tails.
inline std::vector<double> geometric_breaks(double first, double end) {
  std::vector<double> pts{0.0};
  if (end <= 0.0) return pts;
  double p = std::min(first, end);
  while (p < end) {
    pts.push_back(p);
    p *= 2.0;
  }
  pts.push_back(end);
  return pts;
}

/// Cohen-Rodriguez Villegas-Zagier acceleration of sum_k (-1)^k a_k.
/// Converges like 5.8^-n for totally monotone a_k.
inline double alternating_sum_cvz(const std::vector<double>& a) {
  const auto n = static_cast<double>(a.size());
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double kk = static_cast<double>(k);
    c = b - c;
    s += c * a[k];
    b = (kk + n) * (kk - n) * b / ((kk + 0.5) * (kk + 1.0));
  }
  return s / d;
}

}  // namespace stablike::quad
