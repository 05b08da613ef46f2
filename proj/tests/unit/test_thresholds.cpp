#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stablike/thresholds.hpp"

namespace sl = stablike;
using std::numbers::pi;

TEST(R1, ClosedFormValues) {
  EXPECT_EQ(sl::r1(1.0), 0.0);
  EXPECT_NEAR(sl::r1(0.5), -2.0 * pi, 1e-12);
  EXPECT_NEAR(sl::r1(1.5), 2.0 * pi / 3.0, 1e-12);
  EXPECT_THROW(sl::r1(0.0), sl::DomainError);
  EXPECT_THROW(sl::r1(2.0), sl::DomainError);
}

TEST(R1, MatchesCotangentForm) {
  for (double a = 0.05; a < 2.0; a += 0.05) EXPECT_NEAR(sl::r1(a), -pi / std::tan(pi * a / 2.0) / a, 1e-9 * (1.0 + std::abs(sl::r1(a))));
}

// References from the integral form
//   S(s, a) = int_0^1 u^(-a-1) ((1+u)^s + (1-u)^s - 2) du
// evaluated with 400-digit integrands (mpmath tanh-sinh).
TEST(EvenSeries, MatchesIntegralForm) {
  EXPECT_NEAR(sl::binomial_even_series(0.5, 1.2).value, -0.360512009607648090, 1e-14);
  EXPECT_NEAR(sl::binomial_even_series(0.001, 0.5).value, -0.00101571262171370897, 1e-15);
  EXPECT_NEAR(sl::binomial_even_series(-0.001, 0.5).value, 0.00101887044957375136, 1e-15);
  EXPECT_NEAR(sl::r2(1.2, 0.5).value, -0.704838849522627091, 1e-12);
  EXPECT_NEAR(sl::t(0.8, 0.01).value / 0.01, -1.20960602303917539, 1e-9);
}

TEST(R2, RootAtOnePlusBeta) {
  for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto v = sl::r2(1.0 + b, b);
    EXPECT_LE(std::abs(v.value), 1e-7) << b;
    EXPECT_LE(v.est_abs_error, 1e-8);
  }
}

TEST(R2, SignBelowRoot) {
  const auto v = sl::r2(1.2, 0.5);
  EXPECT_LT(v.value, 0.0);
  EXPECT_NEAR(v.value, -0.70484, 1e-4);  // high-precision reference
  EXPECT_FALSE(v.indistinguishable_from_zero());
}

TEST(R2, DomainChecks) {
  EXPECT_THROW(sl::r2(0.5, 0.5), sl::DomainError);
  EXPECT_THROW(sl::r2(1.5, 0.0), sl::DomainError);
  EXPECT_THROW(sl::r2(1.5, 1.2), sl::DomainError);
  EXPECT_THROW(sl::r2(2.0, 0.5), sl::DomainError);
  EXPECT_NO_THROW(sl::r2(1.5, 1.0));
}

TEST(R2, SmallBetaRatio) { EXPECT_NEAR(sl::r2(1.3, 0.01).value / 0.01, sl::r1(1.3), 0.05); }

TEST(T, RootAtOneMinusBeta) {
  for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto v = sl::t(1.0 - b, b);
    EXPECT_LE(std::abs(v.value), 1e-7) << b;
    EXPECT_LE(v.est_abs_error, 1e-8);
  }
}

TEST(T, SignAboveRoot) {
  const auto v = sl::t(0.7, 0.5);
  EXPECT_GT(v.value, 0.0);
  EXPECT_NEAR(v.value, 0.878461, 1e-5);  // high-precision reference
}

TEST(T, DomainChecks) {
  EXPECT_THROW(sl::t(0.5, 1.0), sl::DomainError);
  EXPECT_THROW(sl::t(0.5, 0.0), sl::DomainError);
  EXPECT_THROW(sl::t(2.5, 0.5), sl::DomainError);
}

TEST(T, SmallBetaRatio) {
  // At beta = 0.01 the ratio is still 0.066 away from r1(0.8); the limit is
  // approached linearly in beta.
  const double ratio = sl::t(0.8, 0.01).value / 0.01;
  EXPECT_NEAR(ratio, -1.2096, 1e-3);
  EXPECT_NEAR(sl::t(0.8, 0.001).value / 0.001, sl::r1(0.8), 0.01);
}

TEST(Thresholds, StrictlyIncreasingInAlpha) {
  auto increasing = [](auto f, double lo, double hi) {
    double prev = -INFINITY;
    for (int i = 1; i <= 50; ++i) {
      const double a = lo + (hi - lo) * i / 51.0;
      const double v = f(a);
      if (!(v > prev)) return false;
      prev = v;
    }
    return true;
  };
  EXPECT_TRUE(increasing([](double a) { return sl::r1(a); }, 0.0, 2.0));
  for (double b : {0.1, 0.5, 0.9, 1.0}) EXPECT_TRUE(increasing([b](double a) { return sl::r2(a, b).value; }, b, 2.0)) << b;
  for (double b : {0.1, 0.5, 0.9}) EXPECT_TRUE(increasing([b](double a) { return sl::t(a, b).value; }, 0.0, 2.0)) << b;
}

TEST(Thresholds, DivergenceAtEdges) {
  EXPECT_LT(sl::r2(0.51, 0.5).value, -10.0);
  EXPECT_LT(sl::t(0.01, 0.5).value, -10.0);
}

TEST(Thresholds, RatioLimitsAtSmallBeta) {
  for (double a : {0.5, 1.0, 1.5}) {
    EXPECT_LE(std::abs(sl::r2(a, 1e-3).value / 1e-3 - sl::r1(a)), 1e-2) << a;
    EXPECT_LE(std::abs(sl::t(a, 1e-3).value / 1e-3 - sl::r1(a)), 1e-2) << a;
  }
}

TEST(R2OverBetaProfile, StrictlyDecreasingInBeta) {
  // The grid runs towards 0, so the values rise towards r1(1.5).
  const std::vector<double> grid{0.4, 0.2, 0.1};
  const auto p = sl::r2_over_beta_profile(1.5, grid);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_LT(p[0], p[1]);
  EXPECT_LT(p[1], p[2]);
  EXPECT_LT(p[2], sl::r1(1.5));
}

TEST(R2OverBetaProfile, ApproachesR1) {
  const std::vector<double> grid{1e-4};
  EXPECT_NEAR(sl::r2_over_beta_profile(1.5, grid)[0], sl::r1(1.5), 1e-3);
}

TEST(R2OverBetaProfile, SinglePointAtRoot) {
  const std::vector<double> grid{0.5};
  EXPECT_NEAR(sl::r2_over_beta_profile(1.5, grid)[0], 0.0, 1e-8);
}

TEST(ThresholdValue, IndistinguishableNearRoot) {
  EXPECT_TRUE(sl::r1_value(1.0).indistinguishable_from_zero());
  EXPECT_FALSE(sl::r1_value(1.5).indistinguishable_from_zero());
}
