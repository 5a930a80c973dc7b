#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabscore/scoring.h"

namespace stabscore {

enum class SourceFormat {
  kDelimited,  // comma-separated text with a header row
  kJson,       // array of objects, or {"observations": [...]}
};

// The six canonical columns, in the order they are written.
inline constexpr std::string_view kCanonicalColumns[] = {
    "model", "scenario", "utility", "entropy", "integration", "reflective"};

struct DatasetFile {
  std::vector<std::string> header;
  std::vector<Observation> rows;  // validated, in file order
  SourceFormat source_format = SourceFormat::kDelimited;
};

// Parses and validates an observation table. Failures carry the offending
// line (delimited) or 1-based record index (JSON):
//   kMalformedRow   bad field count, unparsable number or a value rejected
//                   by ValidateObservation (see Error::cause())
//   kMissingColumn  a canonical column is absent from the header
//   kDuplicateKey   a (model, scenario) pair repeats
//   kEmptyFile      no header or no data rows
// Without a hint the format is sniffed from the first non-blank character.
DatasetFile ParseDataset(std::string_view text,
                         std::optional<SourceFormat> hint = std::nullopt,
                         double tolerance = kDefaultValidationTolerance);

// Throws kIo if the file cannot be read.
DatasetFile ParseDatasetFile(const std::filesystem::path& path,
                             std::optional<SourceFormat> hint = std::nullopt,
                             double tolerance = kDefaultValidationTolerance);

// Canonical serializations. Numbers are written in shortest round-trip form
// so re-parsing reproduces the doubles exactly.
std::string WriteDatasetCsv(std::span<const Observation> rows);
std::string WriteDatasetJson(std::span<const Observation> rows);

std::string WriteScoresCsv(std::span<const ScoreRecord> records);
std::string WriteScoresJson(std::span<const ScoreRecord> records);

// Splits one delimited line, honouring double-quoted fields.
std::vector<std::string> SplitCsvLine(std::string_view line);

// Quotes a field if it contains a comma, quote or newline.
std::string CsvEscape(std::string_view field);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace stabscore
