#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stabscore/dataset_io.h"

namespace stabscore {

// SplitMix64: state += 0x9E3779B97F4A7C15, then the xor-shift-multiply
// finalizer. Uniform doubles take the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64();
  // Uniform in [0, 1).
  double NextUniform();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Functional form of one step: (next state, uniform in [0, 1)).
std::pair<std::uint64_t, double> PrngNext(std::uint64_t state);

// Box-Muller normal draws rejected until one lands in [low, high]. After
// kTruncatedNormalMaxAttempts rejections the last draw is clamped. sd == 0
// returns the clamped mean without consuming randomness.
// Throws kInvalidBounds unless low < high and sd >= 0.
double SampleTruncatedNormal(SplitMix64& rng, double mean, double sd, double low,
                             double high);

inline constexpr int kTruncatedNormalMaxAttempts = 1000;

struct ModelProfile {
  std::string model_id;
  double mean_u = 0.0;
  double mean_s = 0.0;
  double mean_i = 0.0;
  double mean_c = 0.0;
  double sd_u = 0.0;
  double sd_s = 0.0;
  double sd_i = 0.0;
  double sd_c = 0.0;
};

struct SyntheticSpec {
  std::vector<ModelProfile> profiles;
  std::size_t scenarios_per_model = 20;
  std::uint64_t seed = 42;
};

// Four profiles with the published per-model means; within-model SDs are
// half the pooled SDs of the benchmark variables.
SyntheticSpec BenchmarkSpec(std::uint64_t seed = 42);

// Throws kInvalidSpec on an empty profile list, zero scenarios, an empty or
// repeated model id, means outside [0, 1] or negative SDs.
void ValidateSpec(const SyntheticSpec& spec);

// Draws profiles x scenarios observations, then shifts each model's values
// so their sample mean equals the profile mean (iterated shift-then-clamp).
// Rows come out in canonical order. Deterministic in `spec`.
DatasetFile GenerateDataset(const SyntheticSpec& spec);

}  // namespace stabscore
