#include "stabscore/synthgen.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gtest/gtest.h"
#include "stabscore/scoring.h"
#include "stabscore/stats.h"
#include "test_util.h"

using stabscore::testing::CodeOf;

namespace stabscore {
namespace {

// Reference SplitMix64, kept separate from the library's.
std::uint64_t ReferenceNext(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TEST(SplitMix64, KnownFirstOutput) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.NextU64(), 0xE220A8397B1DCDAFULL);
}

TEST(SplitMix64, MatchesReferenceStream) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xDEADBEEFULL, ~0ULL}) {
    SplitMix64 rng(seed);
    std::uint64_t ref = seed;
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(rng.NextU64(), ReferenceNext(ref));
    EXPECT_EQ(rng.state(), ref);
  }
}

TEST(SplitMix64, UniformUsesTop53Bits) {
  SplitMix64 rng(7);
  std::uint64_t ref = 7;
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.NextUniform();
    EXPECT_EQ(u, static_cast<double>(ReferenceNext(ref) >> 11) * 0x1.0p-53);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(PrngNext, AgreesWithClass) {
  SplitMix64 rng(99);
  std::uint64_t state = 99;
  for (int i = 0; i < 100; ++i) {
    const auto [next, u] = PrngNext(state);
    EXPECT_EQ(u, rng.NextUniform());
    EXPECT_EQ(next, rng.state());
    state = next;
  }
}

TEST(TruncatedNormal, StaysInBoundsWithPlausibleMoments) {
  SplitMix64 rng(3);
  std::vector<double> draws;
  for (int i = 0; i < 20000; ++i) {
    const double x = SampleTruncatedNormal(rng, 0.5, 0.1, 0.0, 1.0);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    draws.push_back(x);
  }
  // Truncation at 5 SD is negligible; SE of the mean is 0.1/sqrt(20000).
  EXPECT_NEAR(Mean(draws), 0.5, 0.003);
  EXPECT_NEAR(SampleSd(draws), 0.1, 0.003);
}

TEST(TruncatedNormal, DegenerateAndInvalid) {
  SplitMix64 rng(3);
  EXPECT_EQ(SampleTruncatedNormal(rng, 0.3, 0.0, 0.0, 1.0), 0.3);
  EXPECT_EQ(SampleTruncatedNormal(rng, 1.7, 0.0, 0.0, 1.0), 1.0);
  EXPECT_EQ(rng.state(), 3u);
  // Window far in the tail: every draw is rejected, result is clamped.
  const double x = SampleTruncatedNormal(rng, 0.0, 1e-6, 0.5, 1.0);
  EXPECT_GE(x, 0.5);
  EXPECT_LE(x, 1.0);
  EXPECT_EQ(CodeOf([&] { SampleTruncatedNormal(rng, 0.5, 0.1, 1.0, 1.0); }),
            ErrorCode::kInvalidBounds);
  EXPECT_EQ(CodeOf([&] { SampleTruncatedNormal(rng, 0.5, -0.1, 0.0, 1.0); }),
            ErrorCode::kInvalidBounds);
}

TEST(GenerateDataset, ShapeAndOrdering) {
  const DatasetFile data = GenerateDataset(BenchmarkSpec());
  ASSERT_EQ(data.rows.size(), 80u);
  std::map<std::string, int> per_model;
  std::set<std::pair<std::string, std::string>> keys;
  for (const Observation& o : data.rows) {
    ++per_model[o.model_id];
    keys.emplace(o.model_id, o.scenario_id);
  }
  EXPECT_EQ(keys.size(), 80u);
  EXPECT_EQ(per_model.size(), 4u);
  for (const auto& [id, n] : per_model) EXPECT_EQ(n, 20) << id;
  EXPECT_EQ(data.rows.front().scenario_id, "S01");
  EXPECT_EQ(data.rows[19].scenario_id, "S20");
  EXPECT_TRUE(std::is_sorted(data.rows.begin(), data.rows.end(),
                             [](const Observation& a, const Observation& b) {
                               return std::tie(a.model_id, a.scenario_id) <
                                      std::tie(b.model_id, b.scenario_id);
                             }));
}

TEST(GenerateDataset, ModelMeansMatchProfiles) {
  const SyntheticSpec spec = BenchmarkSpec();
  const DatasetFile data = GenerateDataset(spec);
  for (const ModelProfile& p : spec.profiles) {
    std::vector<double> u, s, i, c;
    for (const Observation& o : data.rows) {
      if (o.model_id != p.model_id) continue;
      u.push_back(o.utility);
      s.push_back(o.entropy);
      i.push_back(o.integration);
      c.push_back(o.reflective);
      EXPECT_GT(o.entropy, 0.0);
      for (double v : {o.utility, o.entropy, o.integration, o.reflective}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    EXPECT_NEAR(Mean(u), p.mean_u, 1e-9) << p.model_id;
    EXPECT_NEAR(Mean(s), p.mean_s, 1e-9) << p.model_id;
    EXPECT_NEAR(Mean(i), p.mean_i, 1e-9) << p.model_id;
    EXPECT_NEAR(Mean(c), p.mean_c, 1e-9) << p.model_id;
  }
}

TEST(GenerateDataset, BuiltInProfilesHoldPublishedMeans) {
  const SyntheticSpec spec = BenchmarkSpec();
  ASSERT_EQ(spec.profiles.size(), 4u);
  const ModelProfile& ds = spec.profiles[0];
  EXPECT_EQ(ds.model_id, "DeepSeek-V3");
  EXPECT_EQ(ds.mean_u, 0.9695);
  EXPECT_EQ(ds.mean_s, 0.0517);
  EXPECT_EQ(ds.mean_i, 0.8594);
  EXPECT_EQ(ds.mean_c, 0.9530);
}

TEST(GenerateDataset, DeterministicAndSeedSensitive) {
  const DatasetFile a = GenerateDataset(BenchmarkSpec(42));
  const DatasetFile b = GenerateDataset(BenchmarkSpec(42));
  const DatasetFile c = GenerateDataset(BenchmarkSpec(43));
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(WriteDatasetCsv(a.rows), WriteDatasetCsv(b.rows));
  EXPECT_NE(a.rows, c.rows);
}

TEST(GenerateDataset, CustomSpecs) {
  testing::Gen gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    SyntheticSpec spec;
    spec.seed = static_cast<std::uint64_t>(trial);
    spec.scenarios_per_model = static_cast<std::size_t>(gen.Int(1, 30));
    const int models = gen.Int(1, 5);
    for (int m = 0; m < models; ++m) {
      ModelProfile p;
      p.model_id = "model_" + std::to_string(m);
      p.mean_u = gen.Uniform();
      p.mean_s = gen.Uniform();
      p.mean_i = gen.Uniform();
      p.mean_c = gen.Uniform();
      p.sd_u = gen.Uniform(0.0, 0.2);
      p.sd_s = gen.Uniform(0.0, 0.2);
      p.sd_i = gen.Uniform(0.0, 0.2);
      p.sd_c = gen.Uniform(0.0, 0.2);
      spec.profiles.push_back(p);
    }
    const DatasetFile data = GenerateDataset(spec);
    ASSERT_EQ(data.rows.size(), spec.scenarios_per_model * spec.profiles.size());
    for (const ModelProfile& p : spec.profiles) {
      double sum = 0.0;
      for (const Observation& o : data.rows) {
        if (o.model_id == p.model_id) sum += o.utility;
        ASSERT_GE(o.utility, 0.0);
        ASSERT_LE(o.utility, 1.0);
      }
      EXPECT_NEAR(sum / spec.scenarios_per_model, p.mean_u, 1e-9);
    }
    // Rows survive the validator and the scorer.
    EXPECT_NO_THROW(ScoreDataset(data.rows, {}));
  }
}

TEST(ValidateSpec, Rejections) {
  SyntheticSpec empty;
  EXPECT_EQ(CodeOf([&] { ValidateSpec(empty); }), ErrorCode::kInvalidSpec);

  SyntheticSpec spec = BenchmarkSpec();
  spec.scenarios_per_model = 0;
  EXPECT_EQ(CodeOf([&] { GenerateDataset(spec); }), ErrorCode::kInvalidSpec);

  spec = BenchmarkSpec();
  spec.profiles[1].model_id = spec.profiles[0].model_id;
  EXPECT_EQ(CodeOf([&] { ValidateSpec(spec); }), ErrorCode::kInvalidSpec);

  spec = BenchmarkSpec();
  spec.profiles[2].mean_s = 1.5;
  EXPECT_EQ(CodeOf([&] { ValidateSpec(spec); }), ErrorCode::kInvalidSpec);

  spec = BenchmarkSpec();
  spec.profiles[3].sd_c = -0.01;
  EXPECT_EQ(CodeOf([&] { ValidateSpec(spec); }), ErrorCode::kInvalidSpec);

  spec = BenchmarkSpec();
  spec.profiles[0].model_id.clear();
  EXPECT_EQ(CodeOf([&] { ValidateSpec(spec); }), ErrorCode::kInvalidSpec);
}

}  // namespace
}  // namespace stabscore
