#include "stabscore/stats.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

using stabscore::testing::CodeOf;

namespace stabscore {
namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form Student-t CDFs used as oracles.
double CauchyCdf(double t) { return 0.5 + std::atan(t) / kPi; }
double TwoDfCdf(double t) { return 0.5 + t / (2.0 * std::sqrt(2.0 + t * t)); }

// Asymptotic lower normal tail phi(z)/|z| * (1 - 1/z^2 + 3/z^4 - 15/z^6).
double NormalTailAsymptotic(double z) {
  const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
  const double z2 = z * z;
  return phi / std::fabs(z) * (1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2));
}

// Bisection inverse of NormalCdf, independent of any quantile routine.
double NormalQuantileByBisection(double p) {
  double lo = -10.0;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (NormalCdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Describe, SmallSamples) {
  const std::vector<double> three = {1, 2, 3};
  const DescriptiveSummary d = Describe(three);
  EXPECT_EQ(d.n, 3u);
  EXPECT_DOUBLE_EQ(d.mean, 2.0);
  ASSERT_TRUE(d.sd.has_value());
  EXPECT_DOUBLE_EQ(*d.sd, 1.0);  // sqrt((1 + 0 + 1) / 2)
  EXPECT_EQ(d.min, 1.0);
  EXPECT_EQ(d.median, 2.0);
  EXPECT_EQ(d.max, 3.0);

  const std::vector<double> one = {5};
  const DescriptiveSummary s = Describe(one);
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.min, 5.0);
  EXPECT_EQ(s.median, 5.0);
  EXPECT_EQ(s.max, 5.0);
  EXPECT_FALSE(s.sd.has_value());

  const std::vector<double> four = {4, 1, 3, 2};
  EXPECT_EQ(Describe(four).median, 2.5);
}

TEST(Describe, Errors) {
  EXPECT_EQ(CodeOf([] { Describe(std::vector<double>{}); }), ErrorCode::kEmptySample);
  EXPECT_EQ(CodeOf([] { Describe(std::vector<double>{1.0, NAN}); }),
            ErrorCode::kNonFinite);
}

TEST(Describe, ReversalInvariant) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v = gen.Vector(static_cast<std::size_t>(gen.Int(1, 40)));
    const DescriptiveSummary a = Describe(v);
    std::reverse(v.begin(), v.end());
    const DescriptiveSummary b = Describe(v);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.sd, b.sd);
    EXPECT_EQ(a.median, b.median);
    EXPECT_LE(a.min, a.median);
    EXPECT_LE(a.median, a.max);
  }
}

TEST(SortedQuantile, LinearInterpolation) {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  EXPECT_EQ(SortedQuantile(v, 0.25), 2.0);
  EXPECT_EQ(SortedQuantile(v, 0.5), 3.0);
  const std::vector<double> w = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(SortedQuantile(w, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(SortedQuantile(w, 0.75), 3.25);
}

TEST(NormalCdf, KnownValues) {
  EXPECT_EQ(NormalCdf(0.0), 0.5);
  EXPECT_NEAR(NormalCdf(1.959964), 0.975, 1e-7);
  EXPECT_NEAR(NormalQuantileByBisection(0.975), 1.959964, 1e-6);
  // At |z| = 7.77 the 4-term asymptotic series is good to ~1e-6 relative.
  const double tail = NormalCdf(-7.77);
  EXPECT_NEAR(tail / NormalTailAsymptotic(-7.77), 1.0, 1e-5);
  EXPECT_NEAR(tail, 3.92e-15, 0.01e-15);
}

TEST(NormalCdf, FarTailsAgreeWithAsymptoticSeries) {
  for (double z = -10.0; z <= -6.0; z += 0.25) {
    const double tail = NormalCdf(z);
    EXPECT_GT(tail, 0.0);
    // Truncation error of the series is bounded by the next term, 105/z^8.
    EXPECT_NEAR(tail / NormalTailAsymptotic(z), 1.0, 2.0 * 105.0 / std::pow(z, 8));
  }
}

TEST(NormalCdf, Symmetry) {
  for (double z = -10.0; z <= 10.0; z += 0.01) {
    EXPECT_NEAR(NormalCdf(z) + NormalCdf(-z), 1.0, 1e-14) << z;
  }
}

TEST(IncompleteBeta, BoundariesAndUniform) {
  EXPECT_EQ(RegularizedIncompleteBeta(2.5, 3.5, 0.0), 0.0);
  EXPECT_EQ(RegularizedIncompleteBeta(2.5, 3.5, 1.0), 1.0);
  EXPECT_NEAR(RegularizedIncompleteBeta(1.0, 1.0, 0.3), 0.3, 1e-15);
  EXPECT_EQ(CodeOf([] { RegularizedIncompleteBeta(0.0, 1.0, 0.5); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { RegularizedIncompleteBeta(1.0, 1.0, 1.5); }),
            ErrorCode::kInvalidArgument);
}

TEST(IncompleteBeta, HalfIntegerClosedForm) {
  // I_x(1/2, 1/2) = (2/pi) arctan(sqrt(x/(1-x))), and the recurrence
  // I_x(a, b+1) = I_x(a, b) + x^a (1-x)^b / (b B(a, b)) gives
  // I_x(1/2, 3/2) = (2/pi) arctan(sqrt(x/(1-x))) + 2 sqrt(x(1-x)) / pi.
  for (double x = 0.01; x < 1.0; x += 0.01) {
    const double angle = std::atan(std::sqrt(x / (1.0 - x)));
    const double half_half = 2.0 / kPi * angle;
    const double half_three_halves = half_half + 2.0 * std::sqrt(x * (1.0 - x)) / kPi;
    EXPECT_NEAR(RegularizedIncompleteBeta(0.5, 0.5, x), half_half,
                1e-12 * half_half);
    EXPECT_NEAR(RegularizedIncompleteBeta(0.5, 1.5, x), half_three_halves,
                1e-12 * half_three_halves);
  }
  EXPECT_NEAR(RegularizedIncompleteBeta(0.5, 1.5, 0.25),
              1.0 / 3.0 + 2.0 * std::sqrt(0.1875) / kPi, 1e-13);
}

TEST(IncompleteBeta, IntegerParametersMatchBinomialSum) {
  // I_x(a, b) = P(Binomial(a + b - 1, x) >= a) for integer a, b.
  for (int a = 1; a <= 6; ++a) {
    for (int b = 1; b <= 6; ++b) {
      for (double x : {0.05, 0.3, 0.5, 0.77, 0.95}) {
        const int n = a + b - 1;
        double sum = 0.0;
        for (int k = a; k <= n; ++k) {
          sum += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                          std::lgamma(n - k + 1.0)) *
                 std::pow(x, k) * std::pow(1.0 - x, n - k);
        }
        EXPECT_NEAR(RegularizedIncompleteBeta(a, b, x), sum, 1e-12 * std::max(sum, 1e-3))
            << a << " " << b << " " << x;
      }
    }
  }
}

TEST(StudentT, ClosedFormsOverWideRange) {
  for (double t = -50.0; t <= 50.0; t += 0.05) {
    EXPECT_NEAR(StudentTCdf(t, 1), CauchyCdf(t), 1e-10) << t;
    EXPECT_NEAR(StudentTCdf(t, 2), TwoDfCdf(t), 1e-10) << t;
  }
  EXPECT_EQ(StudentTCdf(0.0, 7), 0.5);
  EXPECT_NEAR(StudentTCdf(3.4641, 2), 0.9629, 1e-4);
}

TEST(StudentT, FarTailAtPublishedStatistic) {
  // t reconstructed from the published mean and SD of the gains, n = 80.
  const double t = 0.0299 / (0.0234 / std::sqrt(80.0));
  EXPECT_NEAR(t, 11.428, 1e-3);
  const double p = StudentTTwoSided(t, 79);
  EXPECT_GT(p, 2.22e-18 / 1.5);
  EXPECT_LT(p, 2.22e-18 * 1.5);
  // Frozen from a 40-digit evaluation of the same incomplete beta.
  EXPECT_NEAR(p / 2.0472905493128545e-18, 1.0, 1e-9);
}

TEST(StudentT, Symmetry) {
  for (int df : {1, 2, 5, 30, 79}) {
    for (double t = 0.0; t <= 30.0; t += 0.1) {
      EXPECT_NEAR(StudentTCdf(-t, df), 1.0 - StudentTCdf(t, df), 1e-12);
    }
  }
}

TEST(StudentT, ApproachesNormalForLargeDf) {
  for (double z = -3.0; z <= 3.0; z += 0.05) {
    EXPECT_LE(std::fabs(StudentTCdf(z, 1000) - NormalCdf(z)), 1e-3);
  }
}

TEST(StudentTQuantile, KnownValues) {
  EXPECT_EQ(StudentTQuantile(0.5, 10), 0.0);
  EXPECT_NEAR(StudentTQuantile(0.975, 79), 1.9905, 1e-4);
  EXPECT_NEAR(StudentTQuantile(0.975, 79), 1.990450210230129, 1e-9);
  EXPECT_NEAR(StudentTQuantile(0.975, 1), std::tan(kPi * (0.975 - 0.5)), 1e-9);
  EXPECT_NEAR(StudentTQuantile(0.975, 1), 12.7062, 1e-4);
  EXPECT_EQ(CodeOf([] { StudentTQuantile(1.0, 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { StudentTQuantile(0.3, 0); }), ErrorCode::kInvalidArgument);
}

TEST(StudentTQuantile, InvertsCdf) {
  for (int df : {1, 2, 10, 79}) {
    for (double p = 0.001; p <= 0.999; p += 0.001) {
      const double q = StudentTQuantile(p, df);
      EXPECT_NEAR(StudentTCdf(q, df), p, 1e-9) << df << " " << p;
    }
  }
}

}  // namespace
}  // namespace stabscore
