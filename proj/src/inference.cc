#include "stabscore/inference.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "fmt/format.h"
#include "stabscore/error.h"
#include "stabscore/stats.h"

namespace stabscore {
namespace {

constexpr double kMinP = std::numeric_limits<double>::denorm_min();

double FloorP(double p) { return std::max(p, kMinP); }

void CheckPaired(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("paired samples differ in length ({} vs {})",
                            a.size(), b.size()));
  }
}

void CheckLevel(double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("confidence level must be in (0, 1), got {}", ci_level));
  }
}

// Average ranks (1-based) of `values`, ties sharing the mean rank.
std::vector<double> AverageRanks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return values[l] < values[r];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// Sum over tie groups of (t^3 - t).
double TieTerm(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double term = 0.0;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    term += t * t * t - t;
    i = j + 1;
  }
  return term;
}

// P(W+ <= w) under the null, by enumerating every sign assignment. Ranks are
// doubled so half-integer tie ranks compare exactly.
double ExactLowerTail(const std::vector<double>& ranks, double w) {
  const std::size_t n = ranks.size();
  std::vector<std::int64_t> doubled(n);
  for (std::size_t i = 0; i < n; ++i) {
    doubled[i] = static_cast<std::int64_t>(std::llround(2.0 * ranks[i]));
  }
  const auto target = static_cast<std::int64_t>(std::llround(2.0 * w));
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) sum += doubled[i];
    }
    if (sum <= target) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

PairedTestResult PairedTTestFromMoments(std::size_t n, double mean_diff,
                                        double sd_diff, double ci_level) {
  CheckLevel(ci_level);
  if (n < 2) {
    throw Error(ErrorCode::kTooFewObservations,
                fmt::format("paired t-test needs n >= 2, got {}", n));
  }
  if (!std::isfinite(mean_diff) || !std::isfinite(sd_diff)) {
    throw Error(ErrorCode::kNonFinite, "paired moments must be finite");
  }
  if (!(sd_diff > 0.0)) {
    throw Error(ErrorCode::kZeroVariance,
                "standard deviation of differences is zero");
  }
  PairedTestResult out;
  out.n = n;
  out.df = static_cast<int>(n - 1);
  out.mean_diff = mean_diff;
  out.sd_diff = sd_diff;
  out.ci_level = ci_level;
  const double se = sd_diff / std::sqrt(static_cast<double>(n));
  out.t_statistic = mean_diff / se;
  out.p_two_sided = FloorP(StudentTTwoSided(out.t_statistic, out.df));
  const double crit = StudentTQuantile(0.5 * (1.0 + ci_level), out.df);
  out.ci_low = mean_diff - crit * se;
  out.ci_high = mean_diff + crit * se;
  return out;
}

PairedTestResult PairedTTest(std::span<const double> a,
                             std::span<const double> b, double ci_level) {
  CheckPaired(a, b);
  if (a.size() < 2) {
    throw Error(ErrorCode::kTooFewObservations,
                fmt::format("paired t-test needs n >= 2, got {}", a.size()));
  }
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
  return PairedTTestFromMoments(d.size(), Mean(d), SampleSd(d), ci_level);
}

WilcoxonResult WilcoxonSignedRank(std::span<const double> a,
                                  std::span<const double> b,
                                  WilcoxonMode mode) {
  CheckPaired(a, b);
  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) {
      throw Error(ErrorCode::kNonFinite, "non-finite paired difference");
    }
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    throw Error(ErrorCode::kAllZeroDifferences, "every paired difference is zero");
  }
  std::vector<double> abs_diffs(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) abs_diffs[i] = std::fabs(diffs[i]);
  const std::vector<double> ranks = AverageRanks(abs_diffs);

  WilcoxonResult out;
  out.n_effective = diffs.size();
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    (diffs[i] > 0.0 ? out.w_plus : out.w_minus) += ranks[i];
  }
  const double n = static_cast<double>(out.n_effective);
  const double mu = n * (n + 1.0) / 4.0;
  const double var =
      n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - TieTerm(abs_diffs) / 48.0;
  const double w = std::min(out.w_plus, out.w_minus);
  // var > 0 for every n_eff >= 1, ties included.
  out.z_statistic = (w - mu) / std::sqrt(var);

  if (mode == WilcoxonMode::kExact) {
    if (out.n_effective > kWilcoxonExactMaxN) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("exact Wilcoxon supports n <= {}, got {}",
                              kWilcoxonExactMaxN, out.n_effective));
    }
    out.exact = true;
    out.p_two_sided = std::min(1.0, 2.0 * ExactLowerTail(ranks, w));
  } else {
    out.p_two_sided = std::min(1.0, 2.0 * NormalCdf(out.z_statistic));
  }
  out.p_two_sided = FloorP(out.p_two_sided);
  return out;
}

CorrelationResult CorrelationFromR(double r, std::size_t n) {
  if (n < 3) {
    throw Error(ErrorCode::kTooFewObservations,
                fmt::format("correlation test needs n >= 3, got {}", n));
  }
  if (!(std::fabs(r) <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("correlation must lie in [-1, 1], got {}", r));
  }
  CorrelationResult out;
  out.n = n;
  out.df = static_cast<int>(n - 2);
  out.r = r;
  if (std::fabs(r) == 1.0) {
    out.degenerate = true;
    out.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), r);
    out.p_two_sided = 0.0;
    return out;
  }
  out.t_statistic = r * std::sqrt(static_cast<double>(out.df)) /
                    std::sqrt(1.0 - r * r);
  out.p_two_sided = FloorP(StudentTTwoSided(out.t_statistic, out.df));
  return out;
}

CorrelationResult PearsonCorrelation(std::span<const double> x,
                                     std::span<const double> y) {
  CheckPaired(x, y);
  if (x.size() < 3) {
    throw Error(ErrorCode::kTooFewObservations,
                fmt::format("correlation needs n >= 3, got {}", x.size()));
  }
  const double mx = Mean(x);
  const double my = Mean(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "correlation input has zero variance");
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return CorrelationFromR(r, x.size());
}

}  // namespace stabscore
