#include "stabscore/scoring.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmt/format.h"
#include "stabscore/error.h"

namespace stabscore {
namespace {

double CheckField(const std::optional<double>& value, const char* name,
                  double tolerance) {
  if (!value.has_value()) {
    throw Error(ErrorCode::kMissingField, fmt::format("field '{}' is missing", name));
  }
  const double v = *value;
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFinite, fmt::format("field '{}' is not finite", name));
  }
  if (v < -tolerance || v > 1.0 + tolerance) {
    throw Error(ErrorCode::kOutOfRange,
                fmt::format("field '{}' = {} is outside [0, 1]", name, v));
  }
  return std::clamp(v, 0.0, 1.0);
}

bool KeyLess(const Observation& a, const Observation& b) {
  if (a.model_id != b.model_id) return a.model_id < b.model_id;
  return a.scenario_id < b.scenario_id;
}

}  // namespace

void CoefficientSet::Validate() const {
  const double values[] = {alpha, beta, gamma, lambda};
  const char* names[] = {"alpha", "beta", "gamma", "lambda"};
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("coefficient {} must be finite and >= 0, got {}",
                              names[i], values[i]));
    }
  }
}

Observation ValidateObservation(const RawObservation& raw, double tolerance) {
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
  }
  if (raw.model_id.empty()) {
    throw Error(ErrorCode::kMissingField, "field 'model' is empty");
  }
  if (raw.scenario_id.empty()) {
    throw Error(ErrorCode::kMissingField, "field 'scenario' is empty");
  }
  Observation obs;
  obs.model_id = raw.model_id;
  obs.scenario_id = raw.scenario_id;
  obs.utility = CheckField(raw.utility, "utility", tolerance);
  obs.entropy = CheckField(raw.entropy, "entropy", tolerance);
  obs.integration = CheckField(raw.integration, "integration", tolerance);
  obs.reflective = CheckField(raw.reflective, "reflective", tolerance);
  return obs;
}

double BarrierTerm(const CoefficientSet& coeffs, double integration,
                   double reflective) {
  return coeffs.gamma * integration + coeffs.lambda * reflective;
}

double DampingDenominator(double barrier) {
  if (!(barrier >= 0.0)) {
    throw Error(ErrorCode::kNegativeBarrier,
                fmt::format("barrier must be >= 0, got {}", barrier));
  }
  return 1.0 + barrier;
}

double ReducedScore(const CoefficientSet& coeffs, double utility,
                    double entropy) {
  return coeffs.alpha * utility - coeffs.beta * entropy;
}

double GeneralizedScore(double utility, double entropy, double denominator) {
  if (!(denominator >= 1.0)) {
    throw Error(ErrorCode::kDenominatorBelowOne,
                fmt::format("denominator must be >= 1, got {}", denominator));
  }
  return utility - entropy / denominator;
}

ScoreRecord ScoreObservation(const Observation& obs,
                             const CoefficientSet& coeffs) {
  ScoreRecord rec;
  rec.observation = obs;
  rec.barrier = BarrierTerm(coeffs, obs.integration, obs.reflective);
  rec.denominator = DampingDenominator(rec.barrier);
  rec.reduced = ReducedScore(coeffs, obs.utility, obs.entropy);
  rec.generalized = GeneralizedScore(obs.utility, obs.entropy, rec.denominator);
  rec.gain = rec.generalized - rec.reduced;
  return rec;
}

std::vector<Observation> CanonicalOrder(std::span<const Observation> obs) {
  std::vector<Observation> sorted(obs.begin(), obs.end());
  std::sort(sorted.begin(), sorted.end(), KeyLess);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].model_id == sorted[i].model_id &&
        sorted[i - 1].scenario_id == sorted[i].scenario_id) {
      throw Error(ErrorCode::kDuplicateKey,
                  fmt::format("duplicate key ({}, {})", sorted[i].model_id,
                              sorted[i].scenario_id));
    }
  }
  return sorted;
}

std::vector<ScoreRecord> ScoreDataset(std::span<const Observation> obs,
                                      const CoefficientSet& coeffs) {
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no observations to score");
  }
  coeffs.Validate();
  std::vector<ScoreRecord> records;
  records.reserve(obs.size());
  for (const Observation& o : CanonicalOrder(obs)) {
    records.push_back(ScoreObservation(o, coeffs));
  }
  return records;
}

}  // namespace stabscore
