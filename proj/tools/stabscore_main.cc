// Command-line front end: score, analyze, sweep, report, synth.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "stabscore/cli.h"

namespace {

using stabscore::cli::OutputFormat;
using stabscore::cli::RunConfig;

void AddCoefficientFlags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--alpha", config.coeffs.alpha, "Utility weight of the reduced score")
      ->capture_default_str();
  cmd->add_option("--beta", config.coeffs.beta, "Entropy weight of the reduced score")
      ->capture_default_str();
  cmd->add_option("--gamma", config.coeffs.gamma, "Barrier weight of I_int")
      ->capture_default_str();
  cmd->add_option("--lambda", config.coeffs.lambda, "Barrier weight of C_a")
      ->capture_default_str();
}

void AddFormatFlag(CLI::App* cmd, RunConfig& config) {
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::kCsv},
                                                    {"json", OutputFormat::kJson}};
  cmd->add_option("--format", config.format, "Output format (csv or json)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-damped stability scoring and benchmark analysis"};
  app.require_subcommand(1);

  RunConfig config;
  std::string levels = "0,0.25,0.5,0.75,1";

  CLI::App* score = app.add_subcommand("score", "Score every observation");
  CLI::App* analyze =
      app.add_subcommand("analyze", "Descriptives, paired tests, correlations, figures");
  CLI::App* sweep = app.add_subcommand("sweep", "Coefficient sensitivity grid");
  CLI::App* report = app.add_subcommand("report", "Full report bundle");
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");

  for (CLI::App* cmd : {score, analyze, sweep, report}) {
    cmd->add_option("--input", config.input_path, "Observation table (csv or json)")
        ->required();
    AddCoefficientFlags(cmd, config);
  }
  score->add_option("--out", config.output_path, "Scored table to write")->required();
  AddFormatFlag(score, config);
  for (CLI::App* cmd : {analyze, sweep, report}) {
    cmd->add_option("--out", config.output_path, "Report directory")->required();
  }
  for (CLI::App* cmd : {sweep, report}) {
    cmd->add_option("--levels", levels, "Comma-separated grid levels")
        ->capture_default_str();
  }
  for (CLI::App* cmd : {analyze, report}) {
    cmd->add_option("--ci", config.ci_level, "Confidence level")->capture_default_str();
  }

  synth->add_option("--out", config.output_path, "Dataset file to write")->required();
  synth->add_option("--seed", config.seed, "PRNG seed")->capture_default_str();
  synth->add_option("--preset", config.preset, "Profile preset")->capture_default_str();
  synth->add_option("--models", config.models,
                    "Use the first N model profiles of the preset");
  synth->add_option("--scenarios", config.scenarios, "Scenarios per model");
  AddFormatFlag(synth, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stabscore::cli::kExitValidation;
  }

  try {
    config.grid_levels = stabscore::cli::ParseLevels(levels);
  } catch (const stabscore::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return stabscore::cli::ExitCodeFor(e.code());
  }

  if (score->parsed()) return stabscore::cli::CmdScore(config, std::cerr);
  if (analyze->parsed()) return stabscore::cli::CmdAnalyze(config, std::cerr);
  if (sweep->parsed()) return stabscore::cli::CmdSweep(config, std::cerr);
  if (report->parsed()) return stabscore::cli::CmdReport(config, std::cerr);
  return stabscore::cli::CmdSynth(config, std::cerr);
}
