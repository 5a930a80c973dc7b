#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stabscore/error.h"
#include "stabscore/scoring.h"

namespace stabscore::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

int ExitCodeFor(ErrorCode code);

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  std::filesystem::path input_path;
  std::filesystem::path output_path;  // file for score/synth, directory otherwise
  CoefficientSet coeffs;
  std::vector<double> grid_levels{0.0, 0.25, 0.5, 0.75, 1.0};
  double ci_level = 0.95;
  std::uint64_t seed = 42;
  std::string preset = "paper";
  std::size_t models = 0;     // 0: every profile of the preset
  std::size_t scenarios = 0;  // 0: preset default
  OutputFormat format = OutputFormat::kCsv;

  // Throws kInvalidArgument on negative coefficients or levels, or a
  // confidence level outside (0, 1).
  void Validate() const;
};

// "0,0.25,0.5" -> {0, 0.25, 0.5}. Throws kInvalidArgument.
std::vector<double> ParseLevels(std::string_view text);

// Hex SHA-256 of a byte string.
std::string Sha256Hex(std::string_view bytes);

// Each command writes its outputs plus a JSON run manifest (config echo and
// input digest) and returns a process exit code. Diagnostics go to `err`.
int CmdScore(const RunConfig& config, std::ostream& err);
int CmdAnalyze(const RunConfig& config, std::ostream& err);
int CmdSweep(const RunConfig& config, std::ostream& err);
int CmdReport(const RunConfig& config, std::ostream& err);
int CmdSynth(const RunConfig& config, std::ostream& err);

}  // namespace stabscore::cli
