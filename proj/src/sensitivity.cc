#include "stabscore/sensitivity.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "stabscore/aggregate.h"
#include "stabscore/error.h"

namespace stabscore {

SensitivityCell EvaluateCell(std::span<const Observation> obs, double gamma,
                             double lambda, double alpha, double beta) {
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no observations for sensitivity cell");
  }
  const CoefficientSet coeffs{alpha, beta, gamma, lambda};
  const std::vector<ScoreRecord> records = ScoreDataset(obs, coeffs);

  SensitivityCell cell;
  cell.gamma = gamma;
  cell.lambda = lambda;
  cell.min_gain = records.front().gain;
  std::size_t positive = 0;
  for (const ScoreRecord& r : records) {
    cell.mean_gain += r.gain;
    cell.mean_generalized += r.generalized;
    cell.min_gain = std::min(cell.min_gain, r.gain);
    if (r.gain > 0.0) ++positive;
  }
  const double n = static_cast<double>(records.size());
  cell.mean_gain /= n;
  cell.mean_generalized /= n;
  cell.proportion_positive = static_cast<double>(positive) / n;

  std::vector<ModelAggregate> models = AggregateByModel(records);
  std::stable_sort(models.begin(), models.end(),
                   [](const ModelAggregate& a, const ModelAggregate& b) {
                     if (a.mean_generalized != b.mean_generalized) {
                       return a.mean_generalized > b.mean_generalized;
                     }
                     return a.model_id < b.model_id;
                   });
  for (const ModelAggregate& m : models) cell.model_ranking.push_back(m.model_id);
  return cell;
}

SensitivityGrid EvaluateGrid(std::span<const Observation> obs,
                             std::span<const double> levels, double alpha,
                             double beta) {
  if (levels.empty()) {
    throw Error(ErrorCode::kEmptyLevels, "sensitivity grid needs at least one level");
  }
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no observations for sensitivity grid");
  }
  SensitivityGrid grid;
  grid.levels.assign(levels.begin(), levels.end());
  for (double level : grid.levels) {
    if (!std::isfinite(level) || level < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("grid level must be finite and >= 0, got {}", level));
    }
  }
  std::sort(grid.levels.begin(), grid.levels.end());
  grid.levels.erase(std::unique(grid.levels.begin(), grid.levels.end()),
                    grid.levels.end());
  grid.cells.reserve(grid.levels.size() * grid.levels.size());
  for (double gamma : grid.levels) {
    for (double lambda : grid.levels) {
      grid.cells.push_back(EvaluateCell(obs, gamma, lambda, alpha, beta));
    }
  }
  return grid;
}

std::vector<MonotonicityViolation> CheckMonotonicity(const SensitivityGrid& grid) {
  std::vector<MonotonicityViolation> out;
  const std::size_t k = grid.size();
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t l = 0; l < k; ++l) {
      const double here = grid.at(g, l).mean_gain;
      if (l + 1 < k && grid.at(g, l + 1).mean_gain < here) {
        out.push_back({GridAxis::kAlongLambda, g, l, g, l + 1, here,
                       grid.at(g, l + 1).mean_gain});
      }
      if (g + 1 < k && grid.at(g + 1, l).mean_gain < here) {
        out.push_back({GridAxis::kAlongGamma, g, l, g + 1, l, here,
                       grid.at(g + 1, l).mean_gain});
      }
    }
  }
  return out;
}

RankingStabilityReport RankingStability(const SensitivityGrid& grid) {
  RankingStabilityReport report;
  const std::size_t k = grid.size();
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t l = 0; l < k; ++l) {
      const SensitivityCell& cell = grid.at(g, l);
      if (cell.model_ranking.size() < 2) {
        throw Error(ErrorCode::kSingleModel,
                    "ranking stability needs at least two models");
      }
      auto it = std::find_if(report.groups.begin(), report.groups.end(),
                             [&](const RankingGroup& group) {
                               return group.ranking == cell.model_ranking;
                             });
      if (it == report.groups.end()) {
        report.groups.push_back({cell.model_ranking, {}});
        it = std::prev(report.groups.end());
      }
      it->cells.emplace_back(g, l);
    }
  }
  return report;
}

}  // namespace stabscore
