#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "stabscore/aggregate.h"
#include "stabscore/scoring.h"

namespace stabscore {

// Tukey box: quartiles by linear interpolation, whiskers at the most extreme
// values within 1.5 IQR of the box, everything beyond listed as outliers.
struct BoxStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

BoxStats ComputeBoxStats(std::span<const double> values);

// File name -> contents for the four figures and their data sidecars:
//   fig1_gain_by_model      bars of mean gain per model with +-1 SD
//   fig2_entropy_vs_estar   S against E*
//   fig3_e_vs_estar         E against E* with the dashed identity line
//   fig4_distributions      box plots of E and E*
// Each figure yields "<name>.svg" and "<name>.csv". Throws kEmptyDataset.
std::map<std::string, std::string> EmitFigures(
    std::span<const ScoreRecord> records,
    std::span<const ModelAggregate> aggregates);

inline constexpr double kFigureWidth = 800.0;
inline constexpr double kFigureHeight = 600.0;

}  // namespace stabscore
