#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabscore/aggregate.h"
#include "stabscore/inference.h"
#include "stabscore/scoring.h"
#include "stabscore/sensitivity.h"
#include "stabscore/stats.h"

namespace stabscore {

// Columns of the descriptive table, in row order.
enum class Variable { kU, kS, kIntegration, kReflective, kD, kE, kEStar, kGain };

const char* VariableLabel(Variable v);
double VariableValue(const ScoreRecord& r, Variable v);
std::vector<double> Column(std::span<const ScoreRecord> records, Variable v);

struct CorrelationPair {
  Variable x;
  Variable y;
};

// S-E, S-E*, D-E*, Delta-S.
std::vector<CorrelationPair> DefaultCorrelationPairs();

inline constexpr double kDefaultLevels[] = {0.0, 0.25, 0.5, 0.75, 1.0};

struct AnalysisOptions {
  CoefficientSet coeffs;
  double ci_level = 0.95;
  std::vector<double> levels{std::begin(kDefaultLevels), std::end(kDefaultLevels)};
  std::vector<CorrelationPair> correlation_pairs = DefaultCorrelationPairs();
  bool run_descriptive = true;  // tables 2-5 and figures
  bool run_sensitivity = true;  // tables 6-7 and ranking stability
};

// A test outcome, or the reason it could not be computed (e.g. zero
// variance of the differences).
template <typename T>
struct Outcome {
  std::optional<T> value;
  std::string note;
};

struct CorrelationEntry {
  CorrelationPair pair;
  Outcome<CorrelationResult> result;
};

struct AnalysisResults {
  AnalysisOptions options;
  std::vector<Observation> observations;  // canonical order
  std::vector<ScoreRecord> records;
  std::vector<ModelAggregate> aggregates;
  std::vector<std::pair<Variable, DescriptiveSummary>> descriptives;
  Outcome<PairedTestResult> paired;
  Outcome<WilcoxonResult> wilcoxon;
  std::vector<CorrelationEntry> correlations;
  std::optional<SensitivityGrid> grid;
  std::vector<SensitivityCell> selected;
  std::vector<MonotonicityViolation> monotonicity_violations;
  Outcome<RankingStabilityReport> ranking;
};

// Runs the full pipeline: scoring, descriptives, paired tests, correlations
// and the coefficient sweep. Failures of individual tests are recorded in
// their Outcome rather than thrown.
AnalysisResults Analyze(std::span<const Observation> observations,
                        const AnalysisOptions& options);

// (gamma, lambda) settings of the selected-settings table; the configured
// pair is appended when it is not already listed.
std::vector<std::pair<double, double>> SelectedSettings(const CoefficientSet& coeffs);

// File name -> content. Byte-deterministic for identical inputs.
using ReportBundle = std::map<std::string, std::string>;

// Emits each table as .csv and aligned .txt. Throws kIncompleteInputs when
// a section enabled in the options has not been computed.
ReportBundle RenderTables(const AnalysisResults& results);

// Tables, figures, the observation echo and the scored records.
ReportBundle RenderReport(const AnalysisResults& results);

// Creates `dir` if needed and writes every file of the bundle into it.
void WriteBundle(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace stabscore
