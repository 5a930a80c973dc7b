#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stabscore/scoring.h"

namespace stabscore {

// Summary of a dataset rescored under one (gamma, lambda) pair.
struct SensitivityCell {
  double gamma = 0.0;
  double lambda = 0.0;
  double mean_gain = 0.0;
  double min_gain = 0.0;
  double mean_generalized = 0.0;
  double proportion_positive = 0.0;  // share of observations with gain > 0
  // Model ids by mean E* descending, ties broken by id ascending.
  std::vector<std::string> model_ranking;
};

// Cells are stored row-major: row = gamma level, column = lambda level,
// both ascending.
struct SensitivityGrid {
  std::vector<double> levels;
  std::vector<SensitivityCell> cells;

  std::size_t size() const { return levels.size(); }
  const SensitivityCell& at(std::size_t gamma_index, std::size_t lambda_index) const {
    return cells[gamma_index * levels.size() + lambda_index];
  }
  SensitivityCell& at(std::size_t gamma_index, std::size_t lambda_index) {
    return cells[gamma_index * levels.size() + lambda_index];
  }
};

SensitivityCell EvaluateCell(std::span<const Observation> obs, double gamma,
                             double lambda, double alpha = 1.0,
                             double beta = 1.0);

// Levels are sorted ascending and deduplicated before sweeping.
SensitivityGrid EvaluateGrid(std::span<const Observation> obs,
                             std::span<const double> levels,
                             double alpha = 1.0, double beta = 1.0);

enum class GridAxis {
  kAlongLambda,  // gamma fixed, lambda ascending
  kAlongGamma,   // lambda fixed, gamma ascending
};

// mean_gain dropped between two adjacent cells.
struct MonotonicityViolation {
  GridAxis axis;
  std::size_t from_gamma = 0;
  std::size_t from_lambda = 0;
  std::size_t to_gamma = 0;
  std::size_t to_lambda = 0;
  double from_value = 0.0;
  double to_value = 0.0;
};

std::vector<MonotonicityViolation> CheckMonotonicity(const SensitivityGrid& grid);

struct RankingGroup {
  std::vector<std::string> ranking;
  // (gamma index, lambda index) of every cell with this ranking, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
};

struct RankingStabilityReport {
  std::vector<RankingGroup> groups;  // in order of first appearance
  bool stable() const { return groups.size() == 1; }
};

// Throws kSingleModel when the grid was computed from fewer than two models.
RankingStabilityReport RankingStability(const SensitivityGrid& grid);

}  // namespace stabscore
