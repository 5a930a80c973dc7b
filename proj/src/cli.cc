#include "stabscore/cli.h"

#include <openssl/evp.h>

#include <cmath>
#include <functional>
#include <ostream>

#include "fmt/format.h"
#include "json.hpp"
#include "stabscore/dataset_io.h"
#include "stabscore/format.h"
#include "stabscore/report.h"
#include "stabscore/synthgen.h"

namespace stabscore::cli {
namespace {

using Json = nlohmann::ordered_json;

Json ConfigJson(const RunConfig& c) {
  Json j;
  j["input"] = c.input_path.string();
  j["alpha"] = c.coeffs.alpha;
  j["beta"] = c.coeffs.beta;
  j["gamma"] = c.coeffs.gamma;
  j["lambda"] = c.coeffs.lambda;
  j["levels"] = c.grid_levels;
  j["ci"] = c.ci_level;
  j["seed"] = c.seed;
  j["preset"] = c.preset;
  j["models"] = c.models;
  j["scenarios"] = c.scenarios;
  j["format"] = c.format == OutputFormat::kJson ? "json" : "csv";
  return j;
}

std::string Manifest(std::string_view command, const RunConfig& config,
                     const std::string* input_bytes,
                     const std::vector<std::string>& outputs) {
  Json j;
  j["command"] = command;
  j["config"] = ConfigJson(config);
  if (input_bytes != nullptr) {
    j["input_sha256"] = Sha256Hex(*input_bytes);
    j["input_bytes"] = input_bytes->size();
  }
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

// Runs `body`, mapping failures to exit codes and a one-line diagnostic.
int Guard(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

struct LoadedInput {
  std::string bytes;
  DatasetFile dataset;
};

LoadedInput LoadInput(const RunConfig& config) {
  if (config.input_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--input is required");
  }
  LoadedInput in;
  in.bytes = ReadFile(config.input_path);
  in.dataset = ParseDataset(in.bytes);
  return in;
}

std::filesystem::path ManifestPathFor(const std::filesystem::path& file) {
  return std::filesystem::path(file.string() + ".manifest.json");
}

int RunAnalysis(std::string_view command, const RunConfig& config, std::ostream& err,
                bool descriptive, bool sensitivity) {
  return Guard(err, [&] {
    config.Validate();
    const LoadedInput in = LoadInput(config);
    AnalysisOptions options;
    options.coeffs = config.coeffs;
    options.ci_level = config.ci_level;
    options.levels = config.grid_levels;
    options.run_descriptive = descriptive;
    options.run_sensitivity = sensitivity;
    const AnalysisResults results = Analyze(in.dataset.rows, options);
    ReportBundle bundle = RenderReport(results);
    std::vector<std::string> names;
    for (const auto& [name, content] : bundle) names.push_back(name);
    bundle["manifest.json"] = Manifest(command, config, &in.bytes, names);
    WriteBundle(bundle, config.output_path);
    if (results.ranking.value == std::nullopt && sensitivity) {
      err << "notice: ranking stability skipped (" << results.ranking.note << ")\n";
    }
  });
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kNonConvergence: return kExitNumerical;
    default: return kExitValidation;
  }
}

void RunConfig::Validate() const {
  coeffs.Validate();
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("--ci must be in (0, 1), got {}", ci_level));
  }
  if (grid_levels.empty()) {
    throw Error(ErrorCode::kEmptyLevels, "--levels must list at least one value");
  }
  for (double level : grid_levels) {
    if (!std::isfinite(level) || level < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("grid level must be finite and >= 0, got {}", level));
    }
  }
  if (output_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--out is required");
  }
}

std::vector<double> ParseLevels(std::string_view text) {
  std::vector<double> levels;
  for (const std::string& field : SplitCsvLine(text)) {
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      levels.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("cannot parse grid level '{}'", field));
    }
  }
  return levels;
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

int CmdScore(const RunConfig& config, std::ostream& err) {
  return Guard(err, [&] {
    config.Validate();
    const LoadedInput in = LoadInput(config);
    const std::vector<ScoreRecord> records = ScoreDataset(in.dataset.rows, config.coeffs);
    const std::string out = config.format == OutputFormat::kJson
                                ? WriteScoresJson(records)
                                : WriteScoresCsv(records);
    WriteFile(config.output_path, out);
    WriteFile(ManifestPathFor(config.output_path),
              Manifest("score", config, &in.bytes,
                       {config.output_path.filename().string()}));
  });
}

int CmdAnalyze(const RunConfig& config, std::ostream& err) {
  return RunAnalysis("analyze", config, err, /*descriptive=*/true,
                     /*sensitivity=*/false);
}

int CmdSweep(const RunConfig& config, std::ostream& err) {
  return RunAnalysis("sweep", config, err, /*descriptive=*/false,
                     /*sensitivity=*/true);
}

int CmdReport(const RunConfig& config, std::ostream& err) {
  return RunAnalysis("report", config, err, /*descriptive=*/true,
                     /*sensitivity=*/true);
}

int CmdSynth(const RunConfig& config, std::ostream& err) {
  return Guard(err, [&] {
    if (config.output_path.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--out is required");
    }
    if (config.preset != "paper") {
      throw Error(ErrorCode::kInvalidSpec,
                  fmt::format("unknown preset '{}'", config.preset));
    }
    SyntheticSpec spec = BenchmarkSpec(config.seed);
    if (config.models > 0) {
      if (config.models > spec.profiles.size()) {
        throw Error(ErrorCode::kInvalidSpec,
                    fmt::format("preset '{}' has {} model profiles, asked for {}",
                                config.preset, spec.profiles.size(), config.models));
      }
      spec.profiles.resize(config.models);
    }
    if (config.scenarios > 0) spec.scenarios_per_model = config.scenarios;
    const DatasetFile file = GenerateDataset(spec);
    const std::string out = config.format == OutputFormat::kJson
                                ? WriteDatasetJson(file.rows)
                                : WriteDatasetCsv(file.rows);
    WriteFile(config.output_path, out);
    WriteFile(ManifestPathFor(config.output_path),
              Manifest("synth", config, nullptr,
                       {config.output_path.filename().string()}));
  });
}

}  // namespace stabscore::cli
