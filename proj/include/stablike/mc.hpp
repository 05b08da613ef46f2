#pragma once

// Monte Carlo diagnostics. Every path draws from its own derived stream and
// results are reduced in path order, so statistics are bit-reproducible for
// any worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <vector>

#include "stablike/chain.hpp"
#include "stablike/errors.hpp"
#include "stablike/io.hpp"
#include "stablike/parallel.hpp"
#include "stablike/rng.hpp"
#include "stablike/stable.hpp"

namespace stablike {

/// Paths with |state| above this are frozen (treated as escaped).
inline constexpr double kEscapeBound = 1e300;

struct TrajectoryStats {
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  double return_fraction = 0.0;
  double mean_return_time = std::numeric_limits<double>::quiet_NaN();
  double occupation_fraction = 0.0;
  double radius_a = 0.0;
};

struct TvEstimate {
  std::vector<std::size_t> time_points;
  std::vector<double> tv_values;  // half L1 distance of the two histograms, in [0, 1]
  double bin_width = 0.0;
  std::size_t n_paths = 0;
};

namespace mc_detail {

inline RandomStream path_stream(std::uint64_t seed, std::uint64_t path) { return RandomStream(derive_seed(seed, path)); }

inline double advance(const ChainSpec& spec, double x, RandomStream& rng) {
  if (!(std::abs(x) <= kEscapeBound)) return x;  // frozen
  return step(spec, x, rng);
}

/// Pairwise sum in fixed order.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

inline std::int64_t bin_of(double x, double w) {
  const double b = std::floor(x / w);
  constexpr double lim = 4e18;
  if (!(b > -lim)) return static_cast<std::int64_t>(-lim);
  if (!(b < lim)) return static_cast<std::int64_t>(lim);
  return static_cast<std::int64_t>(b);
}

}  // namespace mc_detail

/// First entry into [-a, a] after the path has been outside it. Returns
/// the fraction of paths that enter within n_steps, their mean entry time,
/// and the fraction of all steps spent in [-a, a].
inline TrajectoryStats return_stats(const ChainSpec& spec, double x0, double radius_a, std::size_t n_steps,
                                    std::size_t n_paths, std::uint64_t seed, unsigned threads = 0) {
  if (n_paths == 0) throw PreconditionError("return_stats: n_paths must be positive");
  if (n_steps == 0) throw PreconditionError("return_stats: n_steps must be positive");
  if (!(radius_a >= 0.0)) throw PreconditionError("return_stats: radius must be nonnegative");
  std::vector<double> returned(n_paths), time(n_paths), occ(n_paths);
  parallel_for(
      n_paths,
      [&](std::size_t i) {
        auto rng = mc_detail::path_stream(seed, i);
        double x = x0;
        bool outside = std::abs(x) > radius_a;
        std::size_t hit = 0, inside = 0;
        for (std::size_t n = 1; n <= n_steps; ++n) {
          x = mc_detail::advance(spec, x, rng);
          const bool in = std::abs(x) <= radius_a;
          inside += in;
          if (!hit) {
            if (in && outside) hit = n;
            if (!in) outside = true;
          }
        }
        returned[i] = hit ? 1.0 : 0.0;
        time[i] = static_cast<double>(hit);
        occ[i] = static_cast<double>(inside) / static_cast<double>(n_steps);
      },
      threads);
  TrajectoryStats s;
  s.n_paths = n_paths;
  s.n_steps = n_steps;
  s.radius_a = radius_a;
  const double r = mc_detail::pairwise_sum(returned);
  s.return_fraction = r / static_cast<double>(n_paths);
  if (r > 0.0) s.mean_return_time = mc_detail::pairwise_sum(time) / r;
  s.occupation_fraction = mc_detail::pairwise_sum(occ) / static_cast<double>(n_paths);
  return s;
}

/// Time-average of 1{X_k in [lo, hi]} over the second half of each path,
/// averaged over paths. An empty interval (hi < lo) gives 0.
inline TrajectoryStats occupation(const ChainSpec& spec, double x0, double lo, double hi, std::size_t n_steps,
                                  std::size_t n_paths, std::uint64_t seed, unsigned threads = 0) {
  if (n_steps < 1000) throw PreconditionError("occupation: n_steps must be at least 1000");
  if (n_paths == 0) throw PreconditionError("occupation: n_paths must be positive");
  TrajectoryStats s;
  s.n_paths = n_paths;
  s.n_steps = n_steps;
  s.radius_a = hi >= lo ? 0.5 * (hi - lo) : 0.0;
  if (hi < lo) return s;
  const std::size_t burn = n_steps / 2;
  std::vector<double> occ(n_paths);
  parallel_for(
      n_paths,
      [&](std::size_t i) {
        auto rng = mc_detail::path_stream(seed, i);
        double x = x0;
        std::size_t inside = 0;
        for (std::size_t n = 1; n <= n_steps; ++n) {
          x = mc_detail::advance(spec, x, rng);
          if (n > burn && x >= lo && x <= hi) ++inside;
        }
        occ[i] = static_cast<double>(inside) / static_cast<double>(n_steps - burn);
      },
      threads);
  s.occupation_fraction = mc_detail::pairwise_sum(occ) / static_cast<double>(n_paths);
  return s;
}

/// Half L1 distance between the histograms of X_n started at x0_a and at
/// x0_b. Path i uses stream 2i for the first start and 2i+1 for the second.
inline TvEstimate tv_convergence(const ChainSpec& spec, double x0_a, double x0_b, std::vector<std::size_t> time_points,
                                 std::size_t n_paths, double bin_width, std::uint64_t seed, unsigned threads = 0) {
  if (time_points.empty()) throw PreconditionError("tv_convergence: no time points");
  for (std::size_t i = 0; i < time_points.size(); ++i) {
    if (time_points[i] == 0) throw PreconditionError("tv_convergence: time points must be positive");
    if (i > 0 && !(time_points[i] > time_points[i - 1])) throw PreconditionError("tv_convergence: time points must increase");
  }
  if (n_paths == 0) throw PreconditionError("tv_convergence: n_paths must be positive");
  if (!(bin_width > 0.0)) throw PreconditionError("tv_convergence: bin_width must be positive");
  const std::size_t T = time_points.size();
  std::vector<std::int64_t> bins_a(n_paths * T), bins_b(n_paths * T);
  parallel_for(
      n_paths,
      [&](std::size_t i) {
        for (int side = 0; side < 2; ++side) {
          auto rng = mc_detail::path_stream(seed, 2 * i + static_cast<std::size_t>(side));
          double x = side == 0 ? x0_a : x0_b;
          auto& out = side == 0 ? bins_a : bins_b;
          std::size_t n = 0;
          for (std::size_t k = 0; k < T; ++k) {
            for (; n < time_points[k]; ++n) x = mc_detail::advance(spec, x, rng);
            out[i * T + k] = mc_detail::bin_of(x, bin_width);
          }
        }
      },
      threads);
  TvEstimate est;
  est.time_points = std::move(time_points);
  est.bin_width = bin_width;
  est.n_paths = n_paths;
  for (std::size_t k = 0; k < T; ++k) {
    std::map<std::int64_t, std::int64_t> diff;  // count_a - count_b per bin
    for (std::size_t i = 0; i < n_paths; ++i) {
      ++diff[bins_a[i * T + k]];
      --diff[bins_b[i * T + k]];
    }
    std::int64_t l1 = 0;
    for (const auto& [bin, d] : diff) l1 += d < 0 ? -d : d;
    est.tv_values.push_back(0.5 * static_cast<double>(l1) / static_cast<double>(n_paths));
  }
  return est;
}

/// Histogram of a single long path after burn_in steps, as a density
/// (points = bin centres, sum of value * bin_width = 1).
inline DensityGrid invariant_histogram(const ChainSpec& spec, double x0, std::size_t n_steps, std::size_t burn_in,
                                       double bin_width, std::uint64_t seed) {
  if (!(bin_width > 0.0)) throw PreconditionError("invariant_histogram: bin_width must be positive");
  if (!(n_steps > burn_in)) throw PreconditionError("invariant_histogram: n_steps must exceed burn_in");
  auto rng = trajectory_stream(seed);
  std::map<std::int64_t, std::size_t> counts;
  double x = x0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    x = mc_detail::advance(spec, x, rng);
    if (n > burn_in) ++counts[mc_detail::bin_of(x, bin_width)];
  }
  const double total = static_cast<double>(n_steps - burn_in);
  DensityGrid g;
  for (const auto& [bin, c] : counts) {
    g.points.push_back((static_cast<double>(bin) + 0.5) * bin_width);
    g.values.push_back(static_cast<double>(c) / (total * bin_width));
  }
  return g;
}

/// Probability mass of histogram bins whose centres lie in [lo, hi].
inline double histogram_mass(const DensityGrid& g, double bin_width, double lo = -std::numeric_limits<double>::infinity(),
                             double hi = std::numeric_limits<double>::infinity()) {
  std::vector<double> m;
  for (std::size_t i = 0; i < g.points.size(); ++i)
    if (g.points[i] >= lo && g.points[i] <= hi) m.push_back(g.values[i] * bin_width);
  return mc_detail::pairwise_sum(m);
}

/// L1 distance between two histograms with the same bin width.
inline double histogram_l1(const DensityGrid& a, const DensityGrid& b, double bin_width) {
  std::map<double, double> diff;
  for (std::size_t i = 0; i < a.points.size(); ++i) diff[a.points[i]] += a.values[i] * bin_width;
  for (std::size_t i = 0; i < b.points.size(); ++i) diff[b.points[i]] -= b.values[i] * bin_width;
  double s = 0.0;
  for (const auto& [p, d] : diff) s += std::abs(d);
  return s;
}

inline void write_stats_csv(std::ostream& os, const TrajectoryStats& s) {
  io::csv_row(os, {"n_paths", "n_steps", "radius_a", "return_fraction", "mean_return_time", "occupation_fraction"});
  io::csv_row(os, {io::fmt(static_cast<std::uint64_t>(s.n_paths)), io::fmt(static_cast<std::uint64_t>(s.n_steps)),
                   io::fmt(s.radius_a), io::fmt(s.return_fraction), io::fmt(s.mean_return_time), io::fmt(s.occupation_fraction)});
}

inline void write_tv_csv(std::ostream& os, const TvEstimate& tv) {
  io::csv_row(os, {"time", "tv", "bin_width", "n_paths"});
  for (std::size_t k = 0; k < tv.time_points.size(); ++k)
    io::csv_row(os, {io::fmt(static_cast<std::uint64_t>(tv.time_points[k])), io::fmt(tv.tv_values[k]), io::fmt(tv.bin_width),
                     io::fmt(static_cast<std::uint64_t>(tv.n_paths))});
}

inline void write_histogram_csv(std::ostream& os, const DensityGrid& g, double bin_width) {
  io::csv_row(os, {"bin_center", "mass"});
  for (std::size_t i = 0; i < g.points.size(); ++i) io::csv_row(os, {io::fmt(g.points[i]), io::fmt(g.values[i] * bin_width)});
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  io::csv_row(os, {"step", "state"});
  io::csv_row(os, {"0", io::fmt(t.start)});
  for (std::size_t i = 0; i < t.states.size(); ++i) io::csv_row(os, {io::fmt(static_cast<std::uint64_t>(i + 1)), io::fmt(t.states[i])});
}

}  // namespace stablike
