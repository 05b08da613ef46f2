#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stablike/chain.hpp"

namespace sl = stablike;

namespace {

double hill_index(std::vector<double> xs, double top_fraction) {
  for (auto& x : xs) x = std::abs(x);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  const auto k = static_cast<std::size_t>(top_fraction * xs.size());
  double h = 0.0;
  for (std::size_t i = 0; i < k; ++i) h += std::log(xs[i] / xs[k]);
  return k / h;
}

}  // namespace

TEST(Profile, Lookups) {
  EXPECT_EQ(sl::ProfileFn::constant(1.5)(-1e9), 1.5);
  const auto tv = sl::ProfileFn::two_valued(0.8, 1.4);
  EXPECT_EQ(tv(-3.0), 0.8);
  EXPECT_EQ(tv(0.0), 1.4);
  const auto per = sl::ProfileFn::periodic(2.0, {0.9, 1.6});
  EXPECT_EQ(per(3.5), 1.6);  // 3.5 mod 2 = 1.5, second cell
  EXPECT_EQ(per(0.5), 0.9);
  EXPECT_EQ(per(-0.5), 1.6);  // -0.5 mod 2 = 1.5
  const auto pw = sl::ProfileFn::piecewise({-10.0, 10.0}, {1.6, 1.2, 1.7});
  EXPECT_EQ(pw(-11.0), 1.6);
  EXPECT_EQ(pw(-10.0), 1.2);
  EXPECT_EQ(pw(9.99), 1.2);
  EXPECT_EQ(pw(10.0), 1.7);
}

TEST(Profile, RangeSummaries) {
  const auto pw = sl::ProfileFn::piecewise({-10.0, 10.0}, {1.6, 1.2, 1.7});
  EXPECT_EQ(pw.inf(), 1.2);
  EXPECT_EQ(pw.sup(), 1.7);
  EXPECT_EQ(pw.liminf(), 1.6);
  EXPECT_EQ(pw.limsup(), 1.7);
}

TEST(Profile, ShapeChecks) {
  EXPECT_THROW(sl::ProfileFn::periodic(0.0, {1.0}), sl::PreconditionError);
  EXPECT_THROW(sl::ProfileFn::periodic(1.0, {}), sl::PreconditionError);
  EXPECT_THROW(sl::ProfileFn::piecewise({1.0}, {1.0}), sl::PreconditionError);
  EXPECT_THROW(sl::ProfileFn::piecewise({2.0, 1.0}, {1.0, 1.0, 1.0}), sl::PreconditionError);
}

TEST(ChainSpec, ValidationCollectsAllProblems) {
  sl::ChainSpec s{sl::ProfileFn::two_valued(2.5, 0.0), sl::ProfileFn::constant(-1.0), sl::ProfileFn::constant(0.0)};
  try {
    s.validate();
    FAIL() << "expected ValidationError";
  } catch (const sl::ValidationError& e) {
    EXPECT_EQ(e.problems().size(), 3u);
  }
  EXPECT_NO_THROW(sl::ChainSpec::sas_walk(1.5).validate());
}

TEST(ChainSpec, UncheckedProfilesAreFlagged) {
  sl::profile::Custom c{[](double x) { return 1.0 + 0.5 * std::tanh(x); }, 0.5, 1.5, 0.5, 1.5};
  sl::ChainSpec s{sl::ProfileFn::unchecked(c)};
  EXPECT_TRUE(s.unchecked());
  EXPECT_FALSE(sl::ChainSpec::sas_walk(1.2).unchecked());
  EXPECT_FALSE(s.k0.has_value());
  EXPECT_FALSE(s.l0.has_value());
}

TEST(Chain, TailConstantFollowsProfiles) {
  sl::ChainSpec s{sl::ProfileFn::two_valued(0.8, 1.4), sl::ProfileFn::constant(2.0), sl::ProfileFn::constant(0.0)};
  EXPECT_EQ(sl::alpha_at(s, -1.0), 0.8);
  EXPECT_EQ(sl::c_at(s, 5.0), sl::tail_constant({1.4, 2.0, 0.0}));
}

TEST(Chain, JumpDensity) {
  const auto cauchy = sl::ChainSpec::sas_walk(1.0);
  for (double x : {-50.0, 0.0, 7.0}) EXPECT_NEAR(sl::jump_density(cauchy, x, 0.0), 1.0 / std::numbers::pi, 1e-15);
  sl::ChainSpec s{sl::ProfileFn::two_valued(0.7, 1.6)};
  for (double y : {0.3, 4.0, 60.0}) EXPECT_NEAR(sl::jump_density(s, -2.0, y), sl::jump_density(s, -2.0, -y), 1e-12);
  for (double x : {-5.0, 5.0}) {
    const double a = sl::alpha_at(s, x);
    EXPECT_NEAR(sl::jump_density(s, x, 100.0) * std::pow(100.0, a + 1.0) / sl::c_at(s, x), 1.0, 0.05) << x;
  }
}

TEST(Chain, TailUniformityOverStates) {
  const sl::ChainSpec specs[] = {
      sl::ChainSpec::sas_walk(1.5),
      sl::ChainSpec::sas_walk(0.5, 1.0, 0.5),
      {sl::ProfileFn::two_valued(0.8, 1.4)},
      {sl::ProfileFn::piecewise({-10.0, 10.0}, {1.6, 1.2, 1.6}), sl::ProfileFn::constant(1.0), sl::ProfileFn::two_valued(0.5, -0.5)},
      {sl::ProfileFn::periodic(2.0, {0.9, 1.6}), sl::ProfileFn::two_valued(1.0, 3.0)},
  };
  for (const auto& s : specs) {
    double worst = 0.0;
    for (double x : {-1000.0, -100.0, -10.0, 10.0, 100.0, 1000.0})
      for (double y : {-1e4, 1e4}) {
        const double a = sl::alpha_at(s, x);
        worst = std::max(worst, std::abs(sl::jump_density(s, x, y) * std::pow(1e4, a + 1.0) / sl::c_at(s, x) - 1.0));
      }
    EXPECT_LE(worst, 0.05);
  }
}

TEST(Chain, SymmetricStepHasZeroMean) {
  // The mean of n symmetric alpha-stable jumps is again stable with scale
  // n^(1/alpha - 1); a band of five scales holds with probability ~0.98.
  const double alpha = 1.7;
  const auto s = sl::ChainSpec::sas_walk(alpha);
  sl::RandomStream rng(21);
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sl::step(s, 3.0, rng) - 3.0;
  EXPECT_LT(std::abs(sum / n), 5.0 * std::pow(static_cast<double>(n), 1.0 / alpha - 1.0));
}

TEST(Chain, HillIndexPerSide) {
  sl::ChainSpec s{sl::ProfileFn::two_valued(0.8, 1.4)};
  for (double x : {-10.0, 10.0}) {
    sl::RandomStream rng(x < 0 ? 31 : 32);
    std::vector<double> jumps(1'000'000);
    for (auto& j : jumps) j = sl::step(s, x, rng) - x;
    EXPECT_NEAR(hill_index(jumps, 0.01), sl::alpha_at(s, x), 0.1) << x;
  }
}

TEST(Simulate, Bookkeeping) {
  const auto s = sl::ChainSpec::sas_walk(1.3);
  const auto t = sl::simulate(s, 2.5, 17, 5);
  EXPECT_EQ(t.start, 2.5);
  EXPECT_EQ(t.seed, 5u);
  ASSERT_EQ(t.states.size(), 17u);
  auto rng = sl::trajectory_stream(5);
  EXPECT_EQ(sl::simulate(s, 2.5, 1, 5).states[0], sl::step(s, 2.5, rng));
  EXPECT_EQ(t.states[0], sl::simulate(s, 2.5, 1, 5).states[0]);
  EXPECT_THROW(sl::simulate(s, 0.0, 0, 1), sl::PreconditionError);
}

TEST(Simulate, SeedDeterminism) {
  const sl::ChainSpec s{sl::ProfileFn::two_valued(0.9, 1.5)};
  EXPECT_EQ(sl::simulate(s, 0.0, 500, 9).states, sl::simulate(s, 0.0, 500, 9).states);
  EXPECT_NE(sl::simulate(s, 0.0, 500, 9).states, sl::simulate(s, 0.0, 500, 10).states);
}

TEST(Simulate, MarkovReplay) {
  // Restarting from an intermediate state with the remaining stream
  // reproduces the rest of the path.
  const sl::ChainSpec s{sl::ProfileFn::periodic(3.0, {0.9, 1.6, 1.2})};
  const auto full = sl::simulate(s, 1.0, 200, 77);
  auto rng = sl::trajectory_stream(77);
  double x = 1.0;
  for (int i = 0; i < 100; ++i) x = sl::step(s, x, rng);
  ASSERT_EQ(x, full.states[99]);
  for (int i = 100; i < 200; ++i) {
    x = sl::step(s, x, rng);
    EXPECT_EQ(x, full.states[static_cast<std::size_t>(i)]);
  }
}

TEST(Simulate, SmallAlphaExcursions) {
  const auto s = sl::ChainSpec::sas_walk(0.5);
  int big = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = sl::simulate(s, 0.0, 10'000, seed);
    double m = 0.0;
    for (double v : t.states) m = std::max(m, std::abs(v));
    big += m > 1e6;
  }
  EXPECT_GE(big, 90);
}
