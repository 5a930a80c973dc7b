#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace stabscore {

struct DescriptiveSummary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // sample (n - 1) SD; absent when n < 2
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

// Throws kEmptySample for an empty span and kNonFinite if any value is NaN
// or infinite. Sums run left to right over the given order.
DescriptiveSummary Describe(std::span<const double> sample);

double Mean(std::span<const double> sample);

// Sample standard deviation with the n - 1 denominator. Requires n >= 2.
double SampleSd(std::span<const double> sample);

// Linear-interpolation quantile (R type 7) of an ascending sorted sample.
double SortedQuantile(std::span<const double> sorted, double p);

// Standard normal CDF. Accurate in relative terms far into both tails.
double NormalCdf(double z);

// Regularized incomplete beta I_x(a, b) by continued fraction.
// Throws kNonConvergence if the fraction does not settle within the cap.
double RegularizedIncompleteBeta(double a, double b, double x);

inline constexpr int kIncompleteBetaMaxIterations = 300;
inline constexpr double kIncompleteBetaEpsilon = 1e-15;

// CDF of Student's t with `df` degrees of freedom.
double StudentTCdf(double t, int df);

// Two-sided tail probability P(|T| >= |t|), computed without forming
// 1 - CDF so it stays accurate for very large |t|.
double StudentTTwoSided(double t, int df);

// Inverse of StudentTCdf for p in (0, 1).
double StudentTQuantile(double p, int df);

}  // namespace stabscore
