#include "stabscore/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fmt/format.h"
#include "stabscore/error.h"

namespace stabscore {
namespace {

void CheckSample(std::span<const double> sample) {
  if (sample.empty()) {
    throw Error(ErrorCode::kEmptySample, "sample is empty");
  }
  for (double v : sample) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "sample contains a non-finite value");
    }
  }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kIncompleteBetaMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kIncompleteBetaEpsilon) return h;
  }
  throw Error(ErrorCode::kNonConvergence,
              fmt::format("incomplete beta continued fraction did not converge "
                          "(a={}, b={}, x={})",
                          a, b, x));
}

// x^a (1-x)^b / (a B(a, b)), with y = 1 - x supplied separately so callers
// that know the complement exactly do not lose it to cancellation.
double BetaFront(double a, double b, double x, double y) {
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::exp(a * std::log(x) + b * std::log(y) - log_beta) / a;
}

// I_x(a, b) where y == 1 - x.
double IncompleteBeta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return BetaFront(a, b, x, y) * BetaContinuedFraction(a, b, x);
  }
  return 1.0 - BetaFront(b, a, y, x) * BetaContinuedFraction(b, a, y);
}

// P(T > |t|) for t != 0.
double StudentTUpperTail(double t, int df) {
  if (std::isinf(t)) return 0.0;
  const double n = static_cast<double>(df);
  const double t2 = t * t;
  const double x = n / (n + t2);
  const double y = t2 / (n + t2);
  return 0.5 * IncompleteBeta(0.5 * n, 0.5, x, y);
}

void CheckDf(int df) {
  if (df < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("degrees of freedom must be >= 1, got {}", df));
  }
}

}  // namespace

double Mean(std::span<const double> sample) {
  CheckSample(sample);
  double sum = 0.0;
  for (double v : sample) sum += v;
  return sum / static_cast<double>(sample.size());
}

double SampleSd(std::span<const double> sample) {
  CheckSample(sample);
  if (sample.size() < 2) {
    throw Error(ErrorCode::kTooFewObservations,
                "standard deviation needs at least two values");
  }
  const double mean = Mean(sample);
  double ss = 0.0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(sample.size() - 1));
}

double SortedQuantile(std::span<const double> sorted, double p) {
  CheckSample(sorted);
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DescriptiveSummary Describe(std::span<const double> sample) {
  CheckSample(sample);
  DescriptiveSummary out;
  out.n = sample.size();
  // Sort a copy so the summary is independent of input order (left-to-right
  // sums over the sorted copy are order-free too).
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  out.mean = Mean(sorted);
  if (out.n >= 2) out.sd = SampleSd(sorted);
  out.min = sorted.front();
  out.max = sorted.back();
  const std::size_t mid = out.n / 2;
  out.median = (out.n % 2 == 1) ? sorted[mid]
                                : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return out;
}

double NormalCdf(double z) {
  // erfc keeps full relative precision for large arguments, so the lower
  // tail never cancels.
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("incomplete beta needs a, b > 0 (a={}, b={})", a, b));
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("incomplete beta needs 0 <= x <= 1, got {}", x));
  }
  return IncompleteBeta(a, b, x, 1.0 - x);
}

double StudentTCdf(double t, int df) {
  CheckDf(df);
  if (std::isnan(t)) {
    throw Error(ErrorCode::kNonFinite, "t statistic is NaN");
  }
  if (t == 0.0) return 0.5;
  const double tail = StudentTUpperTail(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double StudentTTwoSided(double t, int df) {
  CheckDf(df);
  if (std::isnan(t)) {
    throw Error(ErrorCode::kNonFinite, "t statistic is NaN");
  }
  if (t == 0.0) return 1.0;
  return std::min(1.0, 2.0 * StudentTUpperTail(t, df));
}

double StudentTQuantile(double p, int df) {
  CheckDf(df);
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("quantile needs 0 < p < 1, got {}", p));
  }
  if (p == 0.5) return 0.0;
  double lo = -1.0;
  double hi = 1.0;
  for (int i = 0; StudentTCdf(lo, df) > p; ++i) {
    if (i > 1100) {
      throw Error(ErrorCode::kNonConvergence, "could not bracket t quantile");
    }
    hi = std::min(hi, lo);
    lo *= 2.0;
  }
  for (int i = 0; StudentTCdf(hi, df) < p; ++i) {
    if (i > 1100) {
      throw Error(ErrorCode::kNonConvergence, "could not bracket t quantile");
    }
    lo = std::max(lo, hi);
    hi *= 2.0;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    const double c = StudentTCdf(mid, df);
    if (c == p) return mid;
    if (c < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace stabscore
