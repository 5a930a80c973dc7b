#include "stabscore/report.h"

#include <algorithm>
#include <system_error>

#include "fmt/format.h"
#include "stabscore/dataset_io.h"
#include "stabscore/error.h"
#include "stabscore/figures.h"
#include "stabscore/format.h"

namespace stabscore {
namespace {

constexpr Variable kAllVariables[] = {
    Variable::kU, Variable::kS,    Variable::kIntegration, Variable::kReflective,
    Variable::kD, Variable::kE,    Variable::kEStar,       Variable::kGain};

// A table rendered two ways: comma-separated and column-aligned text.
struct TextTable {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;

  std::string Csv() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ',';
        out += CsvEscape(cells[i]);
      }
      out += '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
  }

  std::string Aligned() const {
    std::vector<std::size_t> widths(header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size() && i < widths.size(); ++i) {
        widths[i] = std::max(widths[i], cells[i].size());
      }
    };
    measure(header);
    for (const auto& row : rows) measure(row);

    std::string out = title + "\n\n";
    auto emit = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i == 0) {
          line += fmt::format("{:<{}}", cells[i], widths[i]);
        } else {
          line += fmt::format("  {:>{}}", cells[i], widths[i]);
        }
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + '\n';
    };
    emit(header);
    std::size_t total = 0;
    for (std::size_t w : widths) total += w;
    out += std::string(total + 2 * (widths.size() - 1), '-') + '\n';
    for (const auto& row : rows) emit(row);
    if (!notes.empty()) {
      out += '\n';
      for (const std::string& n : notes) out += "Note: " + n + '\n';
    }
    return out;
  }
};

void Put(ReportBundle& bundle, const std::string& stem, const TextTable& table) {
  bundle[stem + ".csv"] = table.Csv();
  bundle[stem + ".txt"] = table.Aligned();
}

std::string Fixed4(double v) { return FormatFixed(v, 4); }

std::string LevelText(double v) { return FormatFixed(v, 2); }

TextTable DescriptiveTable(const AnalysisResults& res) {
  TextTable t;
  t.title = fmt::format("Descriptive statistics (n = {})", res.records.size());
  t.header = {"Variable", "Mean", "SD", "Min", "Median", "Max"};
  for (const auto& [var, d] : res.descriptives) {
    t.rows.push_back({VariableLabel(var), Fixed4(d.mean), FormatFixed(d.sd, 4),
                      Fixed4(d.min), Fixed4(d.median), Fixed4(d.max)});
  }
  return t;
}

TextTable PairedTable(const AnalysisResults& res) {
  TextTable t;
  t.title = "Paired comparison of E* and E";
  const std::string ci_label =
      fmt::format("{}% CI", FormatExact(res.options.ci_level * 100.0));
  t.header = {"Comparison", "Mean E*", "Mean E",  "Mean Delta",  ci_label,
              "t",          "t-test p", "Wilcoxon z", "Wilcoxon p"};
  const std::vector<double> estar = Column(res.records, Variable::kEStar);
  const std::vector<double> e = Column(res.records, Variable::kE);
  const std::vector<double> gain = Column(res.records, Variable::kGain);
  std::vector<std::string> row = {"E* vs E", Fixed4(Mean(estar)), Fixed4(Mean(e)),
                                  Fixed4(Mean(gain))};
  if (res.paired.value) {
    const PairedTestResult& p = *res.paired.value;
    row.push_back(fmt::format("[{}, {}]", Fixed4(p.ci_low), Fixed4(p.ci_high)));
    row.push_back(Fixed4(p.t_statistic));
    row.push_back(FormatPValue(p.p_two_sided));
  } else {
    row.insert(row.end(), {"NA", "NA", "NA"});
    t.notes.push_back("paired t-test not computed: " + res.paired.note);
  }
  if (res.wilcoxon.value) {
    row.push_back(Fixed4(res.wilcoxon.value->z_statistic));
    row.push_back(FormatPValue(res.wilcoxon.value->p_two_sided));
  } else {
    row.insert(row.end(), {"NA", "NA"});
    t.notes.push_back("Wilcoxon test not computed: " + res.wilcoxon.note);
  }
  t.rows.push_back(std::move(row));
  return t;
}

TextTable ModelTable(const AnalysisResults& res) {
  TextTable t;
  t.title = "Mean scores by model";
  t.header = {"Model", "U", "S", "I_int", "C_a", "D", "E", "E*", "Delta"};
  for (const ModelAggregate& a : res.aggregates) {
    t.rows.push_back({a.model_id, Fixed4(a.mean_utility), Fixed4(a.mean_entropy),
                      Fixed4(a.mean_integration), Fixed4(a.mean_reflective),
                      Fixed4(a.mean_denominator), Fixed4(a.mean_reduced),
                      Fixed4(a.mean_generalized), Fixed4(a.mean_gain)});
  }
  return t;
}

TextTable CorrelationTable(const AnalysisResults& res) {
  TextTable t;
  t.title = "Selected correlations";
  t.header = {"Pair", "r", "p"};
  for (const CorrelationEntry& c : res.correlations) {
    const std::string label =
        fmt::format("{} vs {}", VariableLabel(c.pair.x), VariableLabel(c.pair.y));
    if (c.result.value) {
      t.rows.push_back({label, Fixed4(c.result.value->r),
                        FormatPValue(c.result.value->p_two_sided)});
      if (c.result.value->degenerate) {
        t.notes.push_back(label + ": |r| = 1, p reported as 0");
      }
    } else {
      t.rows.push_back({label, "NA", "NA"});
      t.notes.push_back(label + ": " + c.result.note);
    }
  }
  return t;
}

TextTable SensitivityTable(const SensitivityGrid& grid) {
  TextTable t;
  t.title = "Mean stability gain by damping coefficients (rows gamma, columns lambda)";
  t.header = {"gamma\\lambda"};
  for (double l : grid.levels) t.header.push_back(LevelText(l));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<std::string> row = {LevelText(grid.levels[g])};
    for (std::size_t l = 0; l < grid.size(); ++l) {
      row.push_back(Fixed4(grid.at(g, l).mean_gain));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TextTable SelectedTable(const AnalysisResults& res) {
  TextTable t;
  t.title = "Minimum gain and share of observations with E* > E";
  t.header = {"gamma", "lambda", "Min Delta", "Proportion E* > E"};
  for (const SensitivityCell& c : res.selected) {
    t.rows.push_back({LevelText(c.gamma), LevelText(c.lambda), Fixed4(c.min_gain),
                      FormatFixed(c.proportion_positive, 2)});
  }
  return t;
}

std::string SensitivityChecks(const AnalysisResults& res) {
  const SensitivityGrid& grid = *res.grid;
  std::string out = "Sensitivity checks\n\n";
  if (res.monotonicity_violations.empty()) {
    out += "Monotonicity: mean gain is nondecreasing along both axes.\n";
  } else {
    out += fmt::format("Monotonicity: {} violation(s)\n",
                       res.monotonicity_violations.size());
    for (const MonotonicityViolation& v : res.monotonicity_violations) {
      out += fmt::format(
          "  ({}, {}) -> ({}, {}): {} -> {}\n", LevelText(grid.levels[v.from_gamma]),
          LevelText(grid.levels[v.from_lambda]), LevelText(grid.levels[v.to_gamma]),
          LevelText(grid.levels[v.to_lambda]), Fixed4(v.from_value),
          Fixed4(v.to_value));
    }
  }
  if (!res.ranking.value) {
    out += "Ranking stability: skipped (" + res.ranking.note + ")\n";
    return out;
  }
  const RankingStabilityReport& ranking = *res.ranking.value;
  out += fmt::format("Ranking stability: {} ({} distinct ranking(s) over {} cells)\n",
                     ranking.stable() ? "stable" : "not stable", ranking.groups.size(),
                     grid.cells.size());
  for (const RankingGroup& group : ranking.groups) {
    std::string order;
    for (const std::string& id : group.ranking) {
      if (!order.empty()) order += " > ";
      order += id;
    }
    out += fmt::format("  {} : {} cell(s)\n", order, group.cells.size());
  }
  return out;
}

template <typename T, typename Fn>
Outcome<T> Attempt(Fn&& fn) {
  Outcome<T> out;
  try {
    out.value = fn();
  } catch (const Error& e) {
    out.note = e.what();
  }
  return out;
}

}  // namespace

const char* VariableLabel(Variable v) {
  switch (v) {
    case Variable::kU: return "U";
    case Variable::kS: return "S";
    case Variable::kIntegration: return "I_int";
    case Variable::kReflective: return "C_a";
    case Variable::kD: return "D";
    case Variable::kE: return "E";
    case Variable::kEStar: return "E*";
    case Variable::kGain: return "Delta";
  }
  return "?";
}

double VariableValue(const ScoreRecord& r, Variable v) {
  switch (v) {
    case Variable::kU: return r.observation.utility;
    case Variable::kS: return r.observation.entropy;
    case Variable::kIntegration: return r.observation.integration;
    case Variable::kReflective: return r.observation.reflective;
    case Variable::kD: return r.denominator;
    case Variable::kE: return r.reduced;
    case Variable::kEStar: return r.generalized;
    case Variable::kGain: return r.gain;
  }
  return 0.0;
}

std::vector<double> Column(std::span<const ScoreRecord> records, Variable v) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const ScoreRecord& r : records) out.push_back(VariableValue(r, v));
  return out;
}

std::vector<CorrelationPair> DefaultCorrelationPairs() {
  return {{Variable::kS, Variable::kE},
          {Variable::kS, Variable::kEStar},
          {Variable::kD, Variable::kEStar},
          {Variable::kGain, Variable::kS}};
}

std::vector<std::pair<double, double>> SelectedSettings(const CoefficientSet& coeffs) {
  std::vector<std::pair<double, double>> out = {
      {0.0, 0.0}, {0.0, 0.25}, {0.5, 0.5}, {1.0, 1.0}};
  const std::pair<double, double> configured{coeffs.gamma, coeffs.lambda};
  if (std::find(out.begin(), out.end(), configured) == out.end()) {
    out.push_back(configured);
  }
  return out;
}

AnalysisResults Analyze(std::span<const Observation> observations,
                        const AnalysisOptions& options) {
  if (observations.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no observations to analyze");
  }
  if (!(options.ci_level > 0.0 && options.ci_level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("confidence level must be in (0, 1), got {}",
                            options.ci_level));
  }
  AnalysisResults res;
  res.options = options;
  res.observations = CanonicalOrder(observations);
  res.records = ScoreDataset(res.observations, options.coeffs);
  res.aggregates = AggregateByModel(res.records);

  if (options.run_descriptive) {
    for (Variable v : kAllVariables) {
      res.descriptives.emplace_back(v, Describe(Column(res.records, v)));
    }
    const std::vector<double> estar = Column(res.records, Variable::kEStar);
    const std::vector<double> e = Column(res.records, Variable::kE);
    res.paired = Attempt<PairedTestResult>(
        [&] { return PairedTTest(estar, e, options.ci_level); });
    res.wilcoxon = Attempt<WilcoxonResult>([&] { return WilcoxonSignedRank(estar, e); });
    for (const CorrelationPair& pair : options.correlation_pairs) {
      const std::vector<double> x = Column(res.records, pair.x);
      const std::vector<double> y = Column(res.records, pair.y);
      res.correlations.push_back(
          {pair, Attempt<CorrelationResult>([&] { return PearsonCorrelation(x, y); })});
    }
  }

  if (options.run_sensitivity) {
    const CoefficientSet& c = options.coeffs;
    res.grid = EvaluateGrid(res.observations, options.levels, c.alpha, c.beta);
    for (const auto& [gamma, lambda] : SelectedSettings(c)) {
      res.selected.push_back(
          EvaluateCell(res.observations, gamma, lambda, c.alpha, c.beta));
    }
    res.monotonicity_violations = CheckMonotonicity(*res.grid);
    res.ranking = Attempt<RankingStabilityReport>(
        [&] { return RankingStability(*res.grid); });
  }
  return res;
}

ReportBundle RenderTables(const AnalysisResults& res) {
  if (res.records.empty() || res.aggregates.empty()) {
    throw Error(ErrorCode::kIncompleteInputs, "no scored records to render");
  }
  ReportBundle bundle;
  if (res.options.run_descriptive) {
    if (res.descriptives.empty()) {
      throw Error(ErrorCode::kIncompleteInputs, "descriptive statistics missing");
    }
    Put(bundle, "table2_descriptive", DescriptiveTable(res));
    Put(bundle, "table3_paired", PairedTable(res));
    Put(bundle, "table4_models", ModelTable(res));
    if (res.correlations.empty()) {
      const std::string notice =
          "# correlation table omitted: no correlation pairs selected\n";
      bundle["table5_correlations.csv"] = notice;
      bundle["table5_correlations.txt"] = notice;
    } else {
      Put(bundle, "table5_correlations", CorrelationTable(res));
    }
  }
  if (res.options.run_sensitivity) {
    if (!res.grid) {
      throw Error(ErrorCode::kIncompleteInputs, "sensitivity grid missing");
    }
    Put(bundle, "table6_sensitivity", SensitivityTable(*res.grid));
    Put(bundle, "table7_selected", SelectedTable(res));
    bundle["sensitivity_checks.txt"] = SensitivityChecks(res);
  }
  return bundle;
}

ReportBundle RenderReport(const AnalysisResults& res) {
  ReportBundle bundle = RenderTables(res);
  if (res.options.run_descriptive) {
    for (auto& [name, content] : EmitFigures(res.records, res.aggregates)) {
      bundle[name] = std::move(content);
    }
  }
  bundle["observations.csv"] = WriteDatasetCsv(res.observations);
  bundle["scores.csv"] = WriteScoresCsv(res.records);
  return bundle;
}

void WriteBundle(const ReportBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot create directory '{}': {}", dir.string(),
                            ec.message()));
  }
  for (const auto& [name, content] : bundle) WriteFile(dir / name, content);
}

}  // namespace stabscore
