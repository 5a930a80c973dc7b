#pragma once

#include <cstddef>
#include <span>

namespace stabscore {

struct PairedTestResult {
  std::size_t n = 0;
  double mean_diff = 0.0;
  double sd_diff = 0.0;
  double t_statistic = 0.0;
  int df = 0;
  double p_two_sided = 1.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double ci_level = 0.95;
};

struct WilcoxonResult {
  std::size_t n_effective = 0;  // nonzero differences
  double w_plus = 0.0;
  double w_minus = 0.0;
  double z_statistic = 0.0;
  double p_two_sided = 1.0;
  bool exact = false;
};

struct CorrelationResult {
  std::size_t n = 0;
  double r = 0.0;
  double t_statistic = 0.0;
  int df = 0;
  double p_two_sided = 1.0;
  // |r| == 1: t is infinite and p is reported as 0.
  bool degenerate = false;
};

enum class WilcoxonMode {
  kNormalApproximation,
  // Enumerates all 2^n sign assignments; n <= kWilcoxonExactMaxN.
  kExact,
};

inline constexpr std::size_t kWilcoxonExactMaxN = 12;

// Paired t-test on d = a - b with a two-sided p-value and a `ci_level`
// confidence interval for the mean difference.
PairedTestResult PairedTTest(std::span<const double> a,
                             std::span<const double> b,
                             double ci_level = 0.95);

// Same test computed from the summary moments of the differences.
PairedTestResult PairedTTestFromMoments(std::size_t n, double mean_diff,
                                        double sd_diff,
                                        double ci_level = 0.95);

// Signed-rank test on d = a - b. Zero differences are dropped, tied |d| get
// average ranks. The normal approximation uses z = (min(W+, W-) - mu) / sigma
// with the tie-corrected variance and no continuity correction.
WilcoxonResult WilcoxonSignedRank(
    std::span<const double> a, std::span<const double> b,
    WilcoxonMode mode = WilcoxonMode::kNormalApproximation);

// Product-moment correlation with a t-based two-sided p-value.
CorrelationResult PearsonCorrelation(std::span<const double> x,
                                     std::span<const double> y);

// Significance of a given r at sample size n (df = n - 2).
CorrelationResult CorrelationFromR(double r, std::size_t n);

}  // namespace stabscore
