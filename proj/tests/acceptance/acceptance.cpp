// Acceptance suite: one PASS/FAIL line per criterion with indented details.
// Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stablike/stablike.hpp"

namespace sl = stablike;
using sl::Verdict;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286061;

struct Check {
  std::ostringstream notes;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << "    failed: " << what << '\n';
    }
  }
  void note(const std::string& s) { notes << "    " << s << '\n'; }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < budget_s, "runtime " + num(secs) + " s exceeds " + num(budget_s) + " s");
  std::printf("%s %d %s (%.1f s)\n", c.ok ? "PASS" : "FAIL", id, title, secs);
  std::fputs(c.notes.str().c_str(), stdout);
  std::fflush(stdout);
  failures += !c.ok;
}

sl::ChainSpec inward_drift_chain() {
  return {sl::ProfileFn::piecewise({-10.0, 10.0}, {1.6, 1.2, 1.6}), sl::ProfileFn::constant(1.0), sl::ProfileFn::two_valued(0.5, -0.5)};
}

const sl::Evidence* find_evidence(const sl::Classification& c, const std::string& label) {
  for (const auto& e : c.evidence)
    if (e.label() == label) return &e;
  return nullptr;
}

// ---------------------------------------------------------------------------

void thresholds(Check& c) {
  c.require(std::abs(sl::r1(1.0)) <= 1e-12, "|r1(1)| = " + num(std::abs(sl::r1(1.0))));
  for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double r2 = sl::r2(1.0 + b, b).value, t = sl::t(1.0 - b, b).value;
    c.require(std::abs(r2) <= 1e-7, "|r2(1+b,b)| at b=" + num(b) + ": " + num(r2));
    c.require(std::abs(t) <= 1e-7, "|t(1-b,b)| at b=" + num(b) + ": " + num(t));
  }
  const double b = 1e-3;
  for (double a : {0.5, 1.0, 1.5}) {
    const double r1 = sl::r1(a);
    const double e2 = sl::r2(a, b).value / b - r1;
    const double et = sl::t(a, b).value / b - r1;
    c.note("alpha=" + num(a) + ": r2/b - r1 = " + num(e2) + ", t/b - r1 = " + num(et));
    c.require(std::abs(e2) <= 1e-2, "r2 ratio limit at alpha=" + num(a));
    c.require(std::abs(et) <= 1e-2, "t ratio limit at alpha=" + num(a));
  }
}

// psi(1+z) + gamma by its defining series: 1000 terms plus an Euler-Maclaurin tail.
double digamma_series(double z) {
  const int N = 1000;
  double s = 0.0;
  for (int n = N; n >= 1; --n) s += z / (double(n) * (n + z));
  const double n = N;
  const double f = 1.0 / n - 1.0 / (n + z);
  const double f1 = -1.0 / (n * n) + 1.0 / ((n + z) * (n + z));
  const double f3 = -6.0 / std::pow(n, 4) + 6.0 / std::pow(n + z, 4);
  s += std::log((n + z) / n) - 0.5 * f - f1 / 12.0 + f3 / 720.0;
  return s - kEuler;
}

void identities(Check& c) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> wide(0.05, 30.0), unit(0.01, 0.99);
  double w1 = 0, w2 = 0, w3 = 0, w4 = 0, wh = 0;
  for (int i = 0; i < 200; ++i) {
    const double z = wide(gen);
    w1 = std::max(w1, std::abs(sl::digamma(1.0 + z) - digamma_series(z)));
  }
  for (int i = 0; i < 200; ++i) {
    const double z = wide(gen);
    w2 = std::max(w2, std::abs(sl::digamma(1.0 + z) - sl::digamma(z) - 1.0 / z));
  }
  for (int i = 0; i < 200; ++i) {
    const double z = wide(gen) / 2.0;
    w3 = std::max(w3, std::abs(sl::digamma(2.0 * z) - 0.5 * sl::digamma(z) - 0.5 * sl::digamma(z + 0.5) - std::log(2.0)));
  }
  for (int i = 0; i < 200; ++i) {
    const double z = unit(gen);
    w4 = std::max(w4, std::abs(sl::digamma(1.0 - z) - sl::digamma(z) - kPi / std::tan(kPi * z)));
  }
  std::uniform_real_distribution<double> ua(-1.0, 1.0), ub(0.1, 2.0), uz(0.4, 0.6);
  for (int i = 0; i < 100; ++i) {
    const double a = ua(gen), b = ub(gen), cc = b + 0.1 + ub(gen), z = uz(gen);
    wh = std::max(wh, std::abs(sl::hyp2f1_series(a, b, cc, z).value - sl::hyp2f1_euler(a, b, cc, z).value));
  }
  c.note("worst: series " + num(w1) + ", shift " + num(w2) + ", duplication " + num(w3) + ", reflection " + num(w4) +
         ", hyp2f1 paths " + num(wh));
  c.require(w1 <= 1e-8, "series identity");
  c.require(w2 <= 1e-8, "shift identity");
  c.require(w3 <= 1e-8, "duplication identity");
  c.require(w4 <= 1e-8, "reflection identity");
  c.require(wh <= 2e-9, "hyp2f1 dual path");
}

void stable_walks(Check& c) {
  auto expect = [&](const sl::ChainSpec& s, Verdict want, const std::string& name) {
    const auto r = sl::classify(s);
    c.note(name + ": " + sl::summary_line(r));
    c.require(r.verdict == want, name + " gave " + sl::to_string(r.verdict));
  };
  for (double a : {1.2, 1.5, 1.9}) expect(sl::ChainSpec::sas_walk(a), Verdict::Recurrent, "alpha=" + num(a));
  for (double a : {0.3, 0.5, 0.8})
    for (double d : {0.0, 0.5}) expect(sl::ChainSpec::sas_walk(a, 1.0, d), Verdict::Transient, "alpha=" + num(a) + " shift=" + num(d));
  expect(sl::ChainSpec::sas_walk(1.0), Verdict::Inconclusive, "alpha=1");
}

void two_valued(Check& c) {
  auto expect = [&](double l, double r, Verdict want) {
    const auto res = sl::classify({sl::ProfileFn::two_valued(l, r)});
    const std::string name = "(" + num(l) + ", " + num(r) + ")";
    c.note(name + ": " + sl::summary_line(res));
    c.require(res.verdict == want, name + " gave " + sl::to_string(res.verdict));
    if (res.verdict != want) return;
    const auto* e = find_evidence(res, res.primary_condition);
    if (!e) {
      c.require(false, name + " has no primary evidence");
      return;
    }
    // Gap between the threshold and the zero-drift limit of the left side.
    const double gap = std::abs(e->threshold);
    c.note(name + ": margin " + num(e->margin) + " vs gap " + num(gap));
    c.require(e->margin >= 0.25 * gap, name + " margin below 25% of the threshold gap");
  };
  expect(1.2, 1.0, Verdict::Recurrent);
  expect(0.9, 0.8, Verdict::Transient);
}

void ergodic(Check& c) {
  const auto r = sl::classify(inward_drift_chain());
  c.note(sl::summary_line(r));
  c.require(r.verdict == Verdict::Ergodic, std::string("verdict ") + sl::to_string(r.verdict));
  const auto* e = find_evidence(r, "C16[beta=1]");
  c.require(e && e->supports && e->margin > 0.0, "C16 with beta=1 supports with positive margin");
  if (e) c.note("C16[beta=1] margin " + num(e->margin));
}

struct McEstimate {
  double mean, se;
};

McEstimate mc_truncated(const sl::ChainSpec& spec, double x, double delta, const sl::DriftKernel& k, std::size_t n,
                        std::uint64_t seed) {
  sl::RandomStream rng(seed);
  const auto p = sl::params_at(spec, x);
  const double L = delta * std::abs(x);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = sl::sas_sample(p, rng);
    const double v = std::abs(y) <= L ? k(x, y) : 0.0;
    s += v;
    s2 += v * v;
  }
  const double m = s / n;
  return {m, std::sqrt((s2 / n - m * m) / n)};
}

void oracle_equivalence(Check& c) {
  using K = sl::DriftKernel;
  struct Case {
    const char* family;
    sl::ChainSpec spec;
    K kernel;
    double x, delta;
  };
  const sl::ChainSpec tv{sl::ProfileFn::two_valued(0.8, 1.4)};
  const std::vector<Case> cases = {
      {"SaS 1.5", sl::ChainSpec::sas_walk(1.5), K::log_shift(), 200.0, 0.3},
      {"SaS 1.5", sl::ChainSpec::sas_walk(1.5), K::power(0.5), -500.0, 0.5},
      {"SaS 0.7", sl::ChainSpec::sas_walk(0.7), K::bounded(0.3), 1000.0, 0.2},
      {"SaS 0.7", sl::ChainSpec::sas_walk(0.7), K::second_moment(), -50.0, 0.5},
      {"SaS 1.9", sl::ChainSpec::sas_walk(1.9), K::log_shift(), 100.0, 0.1},
      {"Cauchy gamma 2", sl::ChainSpec::sas_walk(1.0, 2.0), K::power(0.25), 1000.0, 0.05},
      {"S1.3 shift .5", sl::ChainSpec::sas_walk(1.3, 1.0, 0.5), K::first_moment(), 300.0, 0.3},
      {"S1.3 shift .5", sl::ChainSpec::sas_walk(1.3, 1.0, 0.5), K::log_shift(), -300.0, 0.3},
      {"inward drift", inward_drift_chain(), K::first_moment(), 200.0, 0.2},
      {"inward drift", inward_drift_chain(), K::power(1.0), -200.0, 0.5},
      {"two-valued", tv, K::bounded(0.5), -100.0, 0.4},
      {"two-valued", tv, K::second_moment(), 100.0, 0.4},
  };
  std::uint64_t seed = 600;
  for (const auto& k : cases) {
    const auto q = sl::truncated_integral(k.spec, k.x, k.delta, k.kernel);
    const auto m = mc_truncated(k.spec, k.x, k.delta, k.kernel, 10'000'000, seed++);
    const double z = (q.value - m.mean) / m.se;
    const std::string name = std::string(k.family) + " " + sl::to_string(k.kernel.kind) + " x=" + num(k.x) + " delta=" + num(k.delta);
    c.note(name + ": quad " + num(q.value) + ", mc " + num(m.mean) + " +- " + num(m.se) + " (z=" + num(z) + ")");
    c.require(std::abs(z) <= 4.0, name + " outside 4 standard errors");
  }
  double worst = 0.0;
  const sl::ChainSpec symmetric[] = {sl::ChainSpec::sas_walk(0.5), sl::ChainSpec::sas_walk(1.0), sl::ChainSpec::sas_walk(1.5, 3.0),
                                     sl::ChainSpec::sas_walk(1.99), tv};
  for (const auto& s : symmetric)
    for (double x : {-1e4, -37.0, 5.0, 1e5})
      for (double d : {0.05, 0.5, 0.9}) worst = std::max(worst, std::abs(sl::truncated_integral(s, x, d, K::first_moment()).value));
  c.note("worst symmetric FirstMoment " + num(worst));
  c.require(worst <= 1e-10, "FirstMoment on symmetric families");
}

double cauchy_exact(double g, double y) { return g / (kPi * (g * g + y * y)); }

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

void stable_numerics(Check& c) {
  double worst = 0.0;
  for (double g : {0.5, 1.0, 3.0})
    for (double y = -60.0; y <= 60.0; y += 0.37) {
      const double f = sl::sas_density({1.0, g, 0.0}, y);
      worst = std::max(worst, std::abs(f - cauchy_exact(g, y)) / cauchy_exact(g, y));
    }
  c.note("Cauchy worst relative error " + num(worst));
  c.require(worst <= 1e-10, "Cauchy exact form");
  for (double a : {0.5, 0.9, 1.4}) {
    const sl::StableParams p{a, 1.0, 0.0};
    for (double y : {-100.0, 100.0}) {
      const double ratio = sl::sas_density(p, y) * std::pow(std::abs(y), a + 1.0) / sl::tail_constant(p);
      c.note("tail ratio alpha=" + num(a) + " y=" + num(y) + ": " + num(ratio));
      c.require(std::abs(ratio - 1.0) <= 0.05, "tail law at alpha=" + num(a));
    }
  }
  const std::size_t n = 100'000;
  const double crit = 1.628 / std::sqrt(static_cast<double>(n));  // level 0.01
  for (double a : {1.0, 2.0}) {
    sl::RandomStream rng(a == 1.0 ? 71 : 72);
    std::vector<double> xs(n);
    for (auto& x : xs) x = sl::sas_sample({a, 1.0, 0.0}, rng);
    // S_2(0, 1, 0) is normal with variance 2.
    auto cdf = a == 1.0 ? std::function<double(double)>([](double x) { return 0.5 + std::atan(x) / kPi; })
                        : std::function<double(double)>([](double x) { return 0.5 * std::erfc(-x / 2.0); });
    const double d = ks_statistic(xs, cdf);
    c.note("KS alpha=" + num(a) + ": D = " + num(d) + " (critical " + num(crit) + ")");
    c.require(d < crit, "KS at alpha=" + num(a));
  }
}

void monte_carlo(Check& c) {
  const auto hi = sl::return_stats(sl::ChainSpec::sas_walk(1.5), 50.0, 10.0, 100'000, 1000, 7);
  const auto lo = sl::return_stats(sl::ChainSpec::sas_walk(0.5), 50.0, 10.0, 100'000, 1000, 7);
  c.note("return fraction alpha=1.5: " + num(hi.return_fraction) + ", alpha=0.5: " + num(lo.return_fraction));
  c.require(hi.return_fraction >= 0.9, "alpha=1.5 return fraction");
  c.require(lo.return_fraction <= 0.6, "alpha=0.5 return fraction");
  const auto tv = sl::tv_convergence(inward_drift_chain(), -100.0, 100.0, {1, 20, 50, 100, 150, 300, 10'000}, 100'000, 5.0, 11);
  std::string s;
  for (std::size_t k = 0; k < tv.time_points.size(); ++k) s += " n=" + std::to_string(tv.time_points[k]) + ":" + num(tv.tv_values[k]);
  c.note("TV proxy" + s);
  for (std::size_t k = 1; k < tv.tv_values.size(); ++k)
    c.require(tv.tv_values[k] < tv.tv_values[k - 1], "TV decreasing at n=" + std::to_string(tv.time_points[k]));
  c.require(tv.tv_values.back() < 0.1, "final TV below 0.1");
}

}  // namespace

int main() {
  std::printf("stablike %s acceptance, %u worker(s)\n", sl::kVersion, sl::resolve_threads());
  criterion(1, "threshold roots and ratio limits", 10, thresholds);
  criterion(2, "special-function identities", 5, identities);
  criterion(3, "stable walk classification", 300, stable_walks);
  criterion(4, "two-valued benchmark", 300, two_valued);
  criterion(5, "inward-drift chain", 300, ergodic);
  criterion(6, "drift integrals vs Monte Carlo", 600, oracle_equivalence);
  criterion(7, "stable density and sampler", 120, stable_numerics);
  criterion(8, "Monte Carlo corroboration", 1200, monte_carlo);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
