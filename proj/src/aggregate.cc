#include "stabscore/aggregate.h"

#include <algorithm>

#include "stabscore/error.h"
#include "stabscore/stats.h"

namespace stabscore {
namespace {

ModelAggregate Summarize(std::span<const ScoreRecord> group) {
  ModelAggregate agg;
  agg.model_id = group.front().observation.model_id;
  agg.n = group.size();
  std::vector<double> gains;
  gains.reserve(group.size());
  for (const ScoreRecord& r : group) {
    agg.mean_utility += r.observation.utility;
    agg.mean_entropy += r.observation.entropy;
    agg.mean_integration += r.observation.integration;
    agg.mean_reflective += r.observation.reflective;
    agg.mean_denominator += r.denominator;
    agg.mean_reduced += r.reduced;
    agg.mean_generalized += r.generalized;
    agg.mean_gain += r.gain;
    gains.push_back(r.gain);
  }
  const double n = static_cast<double>(agg.n);
  agg.mean_utility /= n;
  agg.mean_entropy /= n;
  agg.mean_integration /= n;
  agg.mean_reflective /= n;
  agg.mean_denominator /= n;
  agg.mean_reduced /= n;
  agg.mean_generalized /= n;
  agg.mean_gain /= n;
  if (agg.n >= 2) agg.sd_gain = SampleSd(gains);
  return agg;
}

}  // namespace

std::vector<ModelAggregate> AggregateByModel(std::span<const ScoreRecord> records) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no records to aggregate");
  }
  std::vector<ScoreRecord> sorted(records.begin(), records.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoreRecord& a, const ScoreRecord& b) {
                     if (a.observation.model_id != b.observation.model_id) {
                       return a.observation.model_id < b.observation.model_id;
                     }
                     return a.observation.scenario_id < b.observation.scenario_id;
                   });
  std::vector<ModelAggregate> out;
  std::size_t begin = 0;
  while (begin < sorted.size()) {
    std::size_t end = begin + 1;
    while (end < sorted.size() &&
           sorted[end].observation.model_id == sorted[begin].observation.model_id) {
      ++end;
    }
    out.push_back(Summarize(std::span(sorted).subspan(begin, end - begin)));
    begin = end;
  }
  return out;
}

}  // namespace stabscore
