#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stabscore {

// One model-scenario record. All numeric fields lie in [0, 1] once validated.
struct Observation {
  std::string model_id;
  std::string scenario_id;
  double utility = 0.0;      // U
  double entropy = 0.0;      // S
  double integration = 0.0;  // I_int
  double reflective = 0.0;   // C_a

  friend bool operator==(const Observation&, const Observation&) = default;
};

// An observation as read from an input source, before bounds checking.
struct RawObservation {
  std::string model_id;
  std::string scenario_id;
  std::optional<double> utility;
  std::optional<double> entropy;
  std::optional<double> integration;
  std::optional<double> reflective;
};

// Weights of the reduced score (alpha, beta) and of the barrier term
// (gamma, lambda).
struct CoefficientSet {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.5;
  double lambda = 0.5;

  // Throws kInvalidArgument unless every weight is finite and >= 0.
  void Validate() const;

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

struct ScoreRecord {
  Observation observation;
  double barrier = 0.0;      // B = gamma*I + lambda*C
  double denominator = 1.0;  // D = 1 + B
  double reduced = 0.0;      // E = alpha*U - beta*S
  double generalized = 0.0;  // E* = U - S/D
  double gain = 0.0;         // E* - E

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

inline constexpr double kDefaultValidationTolerance = 1e-9;

// Bounds-checks every numeric field. Values outside [0, 1] by no more than
// `tolerance` are clamped onto the bound; anything further out is rejected.
Observation ValidateObservation(
    const RawObservation& raw,
    double tolerance = kDefaultValidationTolerance);

double BarrierTerm(const CoefficientSet& coeffs, double integration,
                   double reflective);

double DampingDenominator(double barrier);

double ReducedScore(const CoefficientSet& coeffs, double utility,
                    double entropy);

double GeneralizedScore(double utility, double entropy, double denominator);

ScoreRecord ScoreObservation(const Observation& obs,
                             const CoefficientSet& coeffs);

// Orders observations by (model_id, scenario_id). Throws kDuplicateKey if a
// key repeats.
std::vector<Observation> CanonicalOrder(std::span<const Observation> obs);

// Scores every observation and returns the records in canonical order, so
// the output does not depend on input order.
std::vector<ScoreRecord> ScoreDataset(std::span<const Observation> obs,
                                      const CoefficientSet& coeffs);

}  // namespace stabscore
