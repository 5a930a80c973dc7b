#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabscore/scoring.h"

namespace stabscore {

// Per-model means of the inputs and derived scores.
struct ModelAggregate {
  std::string model_id;
  std::size_t n = 0;
  double mean_utility = 0.0;
  double mean_entropy = 0.0;
  double mean_integration = 0.0;
  double mean_reflective = 0.0;
  double mean_denominator = 0.0;
  double mean_reduced = 0.0;
  double mean_generalized = 0.0;
  double mean_gain = 0.0;
  std::optional<double> sd_gain;  // absent for a single observation
};

// One aggregate per distinct model, sorted by model_id. Records are put in
// canonical order first and summed left to right, so the result does not
// depend on input order. Throws kEmptyDataset on empty input.
std::vector<ModelAggregate> AggregateByModel(std::span<const ScoreRecord> records);

}  // namespace stabscore
