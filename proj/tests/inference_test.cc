#include "stabscore/inference.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "stabscore/stats.h"
#include "test_util.h"

using stabscore::testing::CodeOf;

namespace stabscore {
namespace {

// Exact two-sided signed-rank p by enumerating sign patterns over integer
// ranks 1..n (no ties). Written independently of the library's routine.
double ExactSignedRankP(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::fabs(d[a]) < std::fabs(d[b]); });
  int w_plus = 0;
  for (int r = 0; r < n; ++r) {
    if (d[order[r]] > 0) w_plus += r + 1;
  }
  const int total = n * (n + 1) / 2;
  const int w = std::min(w_plus, total - w_plus);
  int count = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    int sum = 0;
    for (int r = 0; r < n; ++r) {
      if (mask & (1 << r)) sum += r + 1;
    }
    if (sum <= w) ++count;
  }
  return std::min(1.0, 2.0 * count / static_cast<double>(1 << n));
}

TEST(PairedTTest, SmallClosedForm) {
  const std::vector<double> a = {2, 3, 4};
  const std::vector<double> b = {1, 1, 1};
  const PairedTestResult r = PairedTTest(a, b);
  EXPECT_EQ(r.n, 3u);
  EXPECT_EQ(r.df, 2);
  EXPECT_DOUBLE_EQ(r.mean_diff, 2.0);
  EXPECT_DOUBLE_EQ(r.sd_diff, 1.0);
  EXPECT_NEAR(r.t_statistic, 2.0 * std::sqrt(3.0), 1e-12);
  // df = 2: P(|T| > t) = 1 - t / sqrt(2 + t^2).
  const double t = 2.0 * std::sqrt(3.0);
  EXPECT_NEAR(r.p_two_sided, 1.0 - t / std::sqrt(2.0 + t * t), 1e-12);
  EXPECT_NEAR(r.p_two_sided, 0.0742, 1e-4);
  EXPECT_LE(r.ci_low, r.mean_diff);
  EXPECT_GE(r.ci_high, r.mean_diff);
}

TEST(PairedTTest, FromPublishedMoments) {
  const PairedTestResult r = PairedTTestFromMoments(80, 0.0299, 0.0234, 0.95);
  EXPECT_NEAR(r.t_statistic, 11.43, 0.02);
  EXPECT_NEAR(r.ci_low, 0.0247, 2e-4);
  EXPECT_NEAR(r.ci_high, 0.0351, 2e-4);
  EXPECT_GT(r.p_two_sided, 2.22e-18 / 1.5);
  EXPECT_LT(r.p_two_sided, 2.22e-18 * 1.5);
}

TEST(PairedTTest, RawDataAndMomentsAgree) {
  testing::Gen gen(5);
  const std::vector<double> a = gen.Vector(30);
  const std::vector<double> b = gen.Vector(30);
  std::vector<double> d(30);
  for (int i = 0; i < 30; ++i) d[i] = a[i] - b[i];
  const PairedTestResult raw = PairedTTest(a, b, 0.9);
  const PairedTestResult moments = PairedTTestFromMoments(30, Mean(d), SampleSd(d), 0.9);
  EXPECT_DOUBLE_EQ(raw.t_statistic, moments.t_statistic);
  EXPECT_DOUBLE_EQ(raw.p_two_sided, moments.p_two_sided);
  EXPECT_DOUBLE_EQ(raw.ci_low, moments.ci_low);
}

TEST(PairedTTest, LocationShift) {
  testing::Gen gen(9);
  std::vector<double> b = gen.Vector(200);
  std::vector<double> a(b.size());
  // Symmetric noise: +e and -e in pairs, so the mean difference is exactly c.
  for (std::size_t i = 0; i < b.size(); i += 2) {
    const double e = gen.Uniform(0.0, 0.01);
    a[i] = b[i] + 0.25 + e;
    a[i + 1] = b[i + 1] + 0.25 - e;
  }
  EXPECT_NEAR(PairedTTest(a, b).mean_diff, 0.25, 1e-12);
}

TEST(PairedTTest, Errors) {
  const std::vector<double> two = {1, 2};
  const std::vector<double> three = {1, 2, 3};
  const std::vector<double> one = {1};
  EXPECT_EQ(CodeOf([&] { PairedTTest(two, three); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([&] { PairedTTest(one, one); }), ErrorCode::kTooFewObservations);
  const std::vector<double> shifted = {2, 3, 4};
  EXPECT_EQ(CodeOf([&] { PairedTTest(shifted, three); }), ErrorCode::kZeroVariance);
}

TEST(PairedTTest, SwapAndShiftInvariance) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.Int(2, 60));
    const std::vector<double> a = gen.Vector(n);
    const std::vector<double> b = gen.Vector(n);
    const PairedTestResult ab = PairedTTest(a, b);
    const PairedTestResult ba = PairedTTest(b, a);
    EXPECT_EQ(ab.mean_diff, -ba.mean_diff);
    EXPECT_EQ(ab.t_statistic, -ba.t_statistic);
    EXPECT_EQ(ab.p_two_sided, ba.p_two_sided);

    const double c = gen.Uniform(-5, 5);
    std::vector<double> a2 = a;
    std::vector<double> b2 = b;
    for (std::size_t i = 0; i < n; ++i) {
      a2[i] += c;
      b2[i] += c;
    }
    const PairedTestResult shifted = PairedTTest(a2, b2);
    EXPECT_NEAR(shifted.mean_diff, ab.mean_diff, 1e-12);
    EXPECT_NEAR(shifted.sd_diff, ab.sd_diff, 1e-12);
    EXPECT_NEAR(shifted.ci_low, ab.ci_low, 1e-12);
    EXPECT_NEAR(shifted.ci_high, ab.ci_high, 1e-12);
    EXPECT_NEAR(shifted.t_statistic, ab.t_statistic, 1e-12 * std::fabs(ab.t_statistic) + 1e-10);
    EXPECT_NEAR(shifted.p_two_sided, ab.p_two_sided, 1e-9);
  }
}

TEST(Wilcoxon, AllPositiveNoTies) {
  std::vector<double> a(80);
  std::vector<double> b(80, 0.0);
  for (int i = 0; i < 80; ++i) a[i] = 0.001 * (i + 1);
  const WilcoxonResult r = WilcoxonSignedRank(a, b);
  EXPECT_EQ(r.n_effective, 80u);
  EXPECT_EQ(r.w_minus, 0.0);
  EXPECT_EQ(r.w_plus, 3240.0);
  EXPECT_NEAR(r.z_statistic, -1620.0 / std::sqrt(43470.0), 1e-12);
  EXPECT_NEAR(r.z_statistic, -7.7700, 5e-4);
  EXPECT_NEAR(r.p_two_sided / 7.84e-15, 1.0, 0.02);
}

TEST(Wilcoxon, ExactEnumeration) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {0, 0, 0};
  const WilcoxonResult r = WilcoxonSignedRank(a, b, WilcoxonMode::kExact);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.w_plus, 6.0);
  EXPECT_DOUBLE_EQ(r.p_two_sided, 0.25);
}

TEST(Wilcoxon, SymmetricDifferencesGiveUnitP) {
  const std::vector<double> a = {1, -1, 1, -1, 1, -1};
  const std::vector<double> b(6, 0.0);
  const WilcoxonResult r = WilcoxonSignedRank(a, b);
  EXPECT_EQ(r.w_plus, r.w_minus);
  EXPECT_EQ(r.z_statistic, 0.0);
  EXPECT_EQ(r.p_two_sided, 1.0);
}

TEST(Wilcoxon, TiesAndZeros) {
  // d = {0, 1, -1, 2, 2, 3}: zero dropped, |d| ranks 1.5, 1.5, 3.5, 3.5, 5.
  const std::vector<double> a = {5, 6, 4, 7, 7, 8};
  const std::vector<double> b = {5, 5, 5, 5, 5, 5};
  const WilcoxonResult r = WilcoxonSignedRank(a, b);
  EXPECT_EQ(r.n_effective, 5u);
  EXPECT_EQ(r.w_plus, 13.5);
  EXPECT_EQ(r.w_minus, 1.5);
  EXPECT_EQ(r.w_plus + r.w_minus, 15.0);
  // sigma^2 = 5*6*11/24 - (6 + 6)/48.
  const double sigma = std::sqrt(5.0 * 6.0 * 11.0 / 24.0 - 12.0 / 48.0);
  EXPECT_NEAR(r.z_statistic, (1.5 - 7.5) / sigma, 1e-12);
}

TEST(Wilcoxon, Errors) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> c = {1, 2, 3};
  EXPECT_EQ(CodeOf([&] { WilcoxonSignedRank(a, c); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([&] { WilcoxonSignedRank(a, a); }), ErrorCode::kAllZeroDifferences);
  const std::vector<double> big(13, 1.0);
  const std::vector<double> zeros(13, 0.0);
  EXPECT_EQ(CodeOf([&] { WilcoxonSignedRank(big, zeros, WilcoxonMode::kExact); }),
            ErrorCode::kInvalidArgument);
}

TEST(Wilcoxon, ExactModeMatchesEnumerationOracle) {
  testing::Gen gen(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.Int(1, 12));
    const std::vector<double> d = gen.Vector(n, -1.0, 1.5);
    const std::vector<double> zeros(n, 0.0);
    const WilcoxonResult exact = WilcoxonSignedRank(d, zeros, WilcoxonMode::kExact);
    EXPECT_NEAR(exact.p_two_sided, ExactSignedRankP(d), 1e-15) << n;
    // Same ranks either way; only the p-value route differs.
    const WilcoxonResult approx = WilcoxonSignedRank(d, zeros);
    EXPECT_EQ(approx.w_plus, exact.w_plus);
    EXPECT_GT(approx.p_two_sided, 0.0);
    EXPECT_LE(approx.p_two_sided, 1.0);
  }
}

TEST(Pearson, KnownValues) {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> y = {6, 4, 5};
  // Centered: x' = (-1, 0, 1), y' = (1, -1, 0); sxy = -1, sxx = 2, syy = 2.
  EXPECT_DOUBLE_EQ(PearsonCorrelation(x, y).r, -0.5);

  std::vector<double> xs(50);
  std::vector<double> ys(50);
  for (int i = 0; i < 50; ++i) {
    xs[i] = i;
    ys[i] = 2.0 * i + 5.0;
  }
  const CorrelationResult perfect = PearsonCorrelation(xs, ys);
  EXPECT_EQ(perfect.r, 1.0);
  EXPECT_TRUE(perfect.degenerate);
  EXPECT_EQ(perfect.p_two_sided, 0.0);
}

TEST(Pearson, PublishedCorrelationSignificance) {
  const CorrelationResult r = CorrelationFromR(0.3242, 80);
  EXPECT_EQ(r.df, 78);
  EXPECT_NEAR(r.t_statistic, 3.03, 0.01);
  EXPECT_NEAR(r.p_two_sided, 0.0033, 3e-4);
}

TEST(Pearson, Errors) {
  const std::vector<double> two = {1, 2};
  const std::vector<double> three = {1, 2, 3};
  const std::vector<double> flat = {4, 4, 4};
  EXPECT_EQ(CodeOf([&] { PearsonCorrelation(two, three); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([&] { PearsonCorrelation(two, two); }),
            ErrorCode::kTooFewObservations);
  EXPECT_EQ(CodeOf([&] { PearsonCorrelation(three, flat); }), ErrorCode::kZeroVariance);
}

TEST(Pearson, AffineInvariance) {
  testing::Gen gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.Int(3, 50));
    const std::vector<double> x = gen.Vector(n);
    const std::vector<double> y = gen.Vector(n);
    const double r = PearsonCorrelation(x, y).r;
    const double scale = gen.Uniform(0.1, 10.0);
    const double shift = gen.Uniform(-3.0, 3.0);
    std::vector<double> x2(n);
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) {
      x2[i] = scale * x[i] + shift;
      neg[i] = -y[i];
    }
    EXPECT_LE(std::fabs(r), 1.0);
    EXPECT_NEAR(PearsonCorrelation(x2, y).r, r, 1e-12);
    EXPECT_NEAR(PearsonCorrelation(x, neg).r, -r, 1e-12);
  }
}

}  // namespace
}  // namespace stabscore
