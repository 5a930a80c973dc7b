#include "stabscore/synthgen.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "fmt/format.h"
#include "stabscore/error.h"

namespace stabscore {
namespace {

// Pooled SDs of U, S, I_int and C_a across the benchmark, halved for the
// within-model spread.
constexpr double kSdUtility = 0.0180 * 0.5;
constexpr double kSdEntropy = 0.0514 * 0.5;
constexpr double kSdIntegration = 0.0620 * 0.5;
constexpr double kSdReflective = 0.0633 * 0.5;

// Draws are kept within mean +- kWindowSds * sd, and sd is capped so that
// window stays strictly inside (0, 1).
constexpr double kWindowSds = 3.0;
constexpr double kSdCapFraction = 0.25;
constexpr int kRecenterIterations = 200;

struct Window {
  double mean;
  double sd;
  double low;
  double high;
};

Window MakeWindow(double mean, double sd) {
  const double cap = kSdCapFraction * std::min(mean, 1.0 - mean);
  const double eff = std::min(sd, cap);
  return {mean, eff, mean - kWindowSds * eff, mean + kWindowSds * eff};
}

double Draw(SplitMix64& rng, const Window& w) {
  if (w.sd <= 0.0) return w.mean;
  return SampleTruncatedNormal(rng, w.mean, w.sd, w.low, w.high);
}

// Shift-then-clamp until the sample mean matches the target.
void Recenter(std::vector<double>& values, const Window& w) {
  for (int iter = 0; iter < kRecenterIterations; ++iter) {
    double sum = 0.0;
    for (double v : values) sum += v;
    const double shift = w.mean - sum / static_cast<double>(values.size());
    if (std::fabs(shift) <= 1e-15) return;
    for (double& v : values) v = std::clamp(v + shift, w.low, w.high);
  }
}

std::string ScenarioId(std::size_t index, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(2, fmt::formatted_size("{}", count));
  return fmt::format("S{:0{}}", index + 1, width);
}

}  // namespace

std::uint64_t SplitMix64::NextU64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::NextUniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

std::pair<std::uint64_t, double> PrngNext(std::uint64_t state) {
  SplitMix64 rng(state);
  const double u = rng.NextUniform();
  return {rng.state(), u};
}

double SampleTruncatedNormal(SplitMix64& rng, double mean, double sd, double low,
                             double high) {
  if (!(low < high) || !(sd >= 0.0) || !std::isfinite(mean) || !std::isfinite(sd)) {
    throw Error(ErrorCode::kInvalidBounds,
                fmt::format("truncated normal needs low < high and sd >= 0 "
                            "(mean={}, sd={}, low={}, high={})",
                            mean, sd, low, high));
  }
  if (sd == 0.0) return std::clamp(mean, low, high);
  double x = mean;
  for (int attempt = 0; attempt < kTruncatedNormalMaxAttempts; ++attempt) {
    const double u1 = rng.NextUniform();
    const double u2 = rng.NextUniform();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    x = mean + sd * radius * std::cos(2.0 * std::numbers::pi * u2);
    if (x >= low && x <= high) return x;
  }
  return std::clamp(x, low, high);
}

SyntheticSpec BenchmarkSpec(std::uint64_t seed) {
  auto profile = [](const char* id, double u, double s, double i, double c) {
    return ModelProfile{id, u, s, i, c,
                        kSdUtility, kSdEntropy, kSdIntegration, kSdReflective};
  };
  SyntheticSpec spec;
  spec.profiles = {
      profile("DeepSeek-V3", 0.9695, 0.0517, 0.8594, 0.9530),
      profile("GPT-4o", 0.9845, 0.0440, 0.9597, 0.9482),
      profile("Gemini-1.5", 0.9545, 0.1480, 0.8981, 0.7990),
      profile("Grok-3", 0.9895, 0.0120, 0.7968, 0.9069),
  };
  spec.scenarios_per_model = 20;
  spec.seed = seed;
  return spec;
}

void ValidateSpec(const SyntheticSpec& spec) {
  if (spec.profiles.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "synthetic spec has no profiles");
  }
  if (spec.scenarios_per_model < 1) {
    throw Error(ErrorCode::kInvalidSpec, "scenarios_per_model must be >= 1");
  }
  std::set<std::string> ids;
  for (const ModelProfile& p : spec.profiles) {
    if (p.model_id.empty() || !ids.insert(p.model_id).second) {
      throw Error(ErrorCode::kInvalidSpec,
                  fmt::format("model id '{}' is empty or repeated", p.model_id));
    }
    for (double m : {p.mean_u, p.mean_s, p.mean_i, p.mean_c}) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw Error(ErrorCode::kInvalidSpec,
                    fmt::format("profile '{}' has a mean outside [0, 1]", p.model_id));
      }
    }
    for (double sd : {p.sd_u, p.sd_s, p.sd_i, p.sd_c}) {
      if (!(sd >= 0.0) || !std::isfinite(sd)) {
        throw Error(ErrorCode::kInvalidSpec,
                    fmt::format("profile '{}' has a negative SD", p.model_id));
      }
    }
  }
}

DatasetFile GenerateDataset(const SyntheticSpec& spec) {
  ValidateSpec(spec);
  SplitMix64 rng(spec.seed);
  const std::size_t n = spec.scenarios_per_model;

  DatasetFile file;
  file.source_format = SourceFormat::kDelimited;
  file.header.assign(std::begin(kCanonicalColumns), std::end(kCanonicalColumns));

  for (const ModelProfile& p : spec.profiles) {
    const Window windows[4] = {MakeWindow(p.mean_u, p.sd_u), MakeWindow(p.mean_s, p.sd_s),
                               MakeWindow(p.mean_i, p.sd_i), MakeWindow(p.mean_c, p.sd_c)};
    std::vector<double> columns[4];
    for (auto& col : columns) col.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (int v = 0; v < 4; ++v) columns[v].push_back(Draw(rng, windows[v]));
    }
    for (int v = 0; v < 4; ++v) Recenter(columns[v], windows[v]);
    for (std::size_t s = 0; s < n; ++s) {
      Observation o;
      o.model_id = p.model_id;
      o.scenario_id = ScenarioId(s, n);
      o.utility = columns[0][s];
      o.entropy = columns[1][s];
      o.integration = columns[2][s];
      o.reflective = columns[3][s];
      file.rows.push_back(std::move(o));
    }
  }
  file.rows = CanonicalOrder(file.rows);
  return file;
}

}  // namespace stabscore
