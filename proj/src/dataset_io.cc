#include "stabscore/dataset_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "fmt/format.h"
#include "json.hpp"
#include "stabscore/error.h"
#include "stabscore/format.h"

namespace stabscore {
namespace {

using Json = nlohmann::ordered_json;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("'{}' is not a number", text));
  }
  return value;
}

// Wraps a validation failure as MalformedRow at `line`, keeping the cause.
[[noreturn]] void RethrowAtLine(const Error& e, std::size_t line) {
  if (e.code() == ErrorCode::kMalformedRow) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("line {}: {}", line, e.what()), line);
  }
  throw Error(ErrorCode::kMalformedRow, fmt::format("line {}: {}", line, e.what()),
              line)
      .WithCause(e.code());
}

void CheckDuplicates(const DatasetFile& file,
                     const std::vector<std::size_t>& lines) {
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    const auto key = std::make_pair(file.rows[i].model_id, file.rows[i].scenario_id);
    const auto [it, inserted] = seen.emplace(key, lines[i]);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateKey,
                  fmt::format("line {}: ({}, {}) already appeared on line {}",
                              lines[i], key.first, key.second, it->second),
                  lines[i]);
    }
  }
}

DatasetFile ParseDelimited(std::string_view text, double tolerance) {
  DatasetFile file;
  file.source_format = SourceFormat::kDelimited;
  std::array<std::size_t, 6> column_index{};
  bool have_header = false;
  std::vector<std::size_t> row_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw_line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                      : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = Trim(raw_line);
    if (line.empty()) continue;

    std::vector<std::string> fields = SplitCsvLine(line);
    if (!have_header) {
      for (std::string& f : fields) f = std::string(Trim(f));
      file.header = fields;
      std::set<std::string> names;
      for (const std::string& f : fields) {
        if (!names.insert(f).second) {
          throw Error(ErrorCode::kMalformedRow,
                      fmt::format("line {}: column '{}' appears twice", line_no, f),
                      line_no);
        }
      }
      for (std::size_t c = 0; c < 6; ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kCanonicalColumns[c]);
        if (it == fields.end()) {
          throw Error(ErrorCode::kMissingColumn,
                      fmt::format("header lacks column '{}'", kCanonicalColumns[c]),
                      line_no);
        }
        column_index[c] = static_cast<std::size_t>(it - fields.begin());
      }
      if (fields.size() != 6) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("line {}: header must hold exactly the six "
                                "canonical columns, found {}",
                                line_no, fields.size()),
                    line_no);
      }
      have_header = true;
      continue;
    }

    if (fields.size() != 6) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("line {}: expected 6 fields, found {}", line_no,
                              fields.size()),
                  line_no);
    }
    try {
      RawObservation raw;
      raw.model_id = std::string(Trim(fields[column_index[0]]));
      raw.scenario_id = std::string(Trim(fields[column_index[1]]));
      raw.utility = ParseNumber(fields[column_index[2]]);
      raw.entropy = ParseNumber(fields[column_index[3]]);
      raw.integration = ParseNumber(fields[column_index[4]]);
      raw.reflective = ParseNumber(fields[column_index[5]]);
      file.rows.push_back(ValidateObservation(raw, tolerance));
      row_lines.push_back(line_no);
    } catch (const Error& e) {
      RethrowAtLine(e, line_no);
    }
  }
  if (!have_header) throw Error(ErrorCode::kEmptyFile, "input has no header");
  if (file.rows.empty()) throw Error(ErrorCode::kEmptyFile, "input has no data rows");
  CheckDuplicates(file, row_lines);
  return file;
}

DatasetFile ParseJson(std::string_view text, double tolerance) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedRow, fmt::format("invalid JSON: {}", e.what()));
  }
  const Json* records = &doc;
  if (doc.is_object()) {
    if (!doc.contains("observations")) {
      throw Error(ErrorCode::kMissingColumn, "JSON object lacks 'observations'");
    }
    records = &doc["observations"];
  }
  if (!records->is_array()) {
    throw Error(ErrorCode::kMalformedRow, "JSON observations must be an array");
  }
  DatasetFile file;
  file.source_format = SourceFormat::kJson;
  file.header.assign(std::begin(kCanonicalColumns), std::end(kCanonicalColumns));
  std::vector<std::size_t> row_indices;
  std::size_t index = 0;
  for (const Json& rec : *records) {
    ++index;
    try {
      if (!rec.is_object()) {
        throw Error(ErrorCode::kMalformedRow, "record is not an object");
      }
      for (const auto& [key, value] : rec.items()) {
        if (std::find(std::begin(kCanonicalColumns), std::end(kCanonicalColumns),
                      key) == std::end(kCanonicalColumns)) {
          throw Error(ErrorCode::kMalformedRow,
                      fmt::format("unexpected field '{}'", key));
        }
      }
      auto text_field = [&](const char* name) -> std::string {
        if (!rec.contains(name)) return {};
        if (!rec[name].is_string()) {
          throw Error(ErrorCode::kMalformedRow,
                      fmt::format("field '{}' must be a string", name));
        }
        return rec[name].get<std::string>();
      };
      auto number_field = [&](const char* name) -> std::optional<double> {
        if (!rec.contains(name) || rec[name].is_null()) return std::nullopt;
        if (!rec[name].is_number()) {
          throw Error(ErrorCode::kMalformedRow,
                      fmt::format("field '{}' must be a number", name));
        }
        return rec[name].get<double>();
      };
      RawObservation raw;
      raw.model_id = text_field("model");
      raw.scenario_id = text_field("scenario");
      raw.utility = number_field("utility");
      raw.entropy = number_field("entropy");
      raw.integration = number_field("integration");
      raw.reflective = number_field("reflective");
      file.rows.push_back(ValidateObservation(raw, tolerance));
      row_indices.push_back(index);
    } catch (const Error& e) {
      RethrowAtLine(e, index);
    }
  }
  if (file.rows.empty()) throw Error(ErrorCode::kEmptyFile, "input has no records");
  CheckDuplicates(file, row_indices);
  return file;
}

Json ObservationJson(const Observation& o) {
  Json j;
  j["model"] = o.model_id;
  j["scenario"] = o.scenario_id;
  j["utility"] = o.utility;
  j["entropy"] = o.entropy;
  j["integration"] = o.integration;
  j["reflective"] = o.reflective;
  return j;
}

std::string ObservationCsvFields(const Observation& o) {
  return fmt::format("{},{},{},{},{},{}", CsvEscape(o.model_id),
                     CsvEscape(o.scenario_id), FormatExact(o.utility),
                     FormatExact(o.entropy), FormatExact(o.integration),
                     FormatExact(o.reflective));
}

}  // namespace

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

DatasetFile ParseDataset(std::string_view text, std::optional<SourceFormat> hint,
                         double tolerance) {
  SourceFormat format = SourceFormat::kDelimited;
  if (hint) {
    format = *hint;
  } else {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
      throw Error(ErrorCode::kEmptyFile, "input is empty");
    }
    if (text[first] == '[' || text[first] == '{') format = SourceFormat::kJson;
  }
  return format == SourceFormat::kJson ? ParseJson(text, tolerance)
                                       : ParseDelimited(text, tolerance);
}

DatasetFile ParseDatasetFile(const std::filesystem::path& path,
                             std::optional<SourceFormat> hint, double tolerance) {
  return ParseDataset(ReadFile(path), hint, tolerance);
}

std::string WriteDatasetCsv(std::span<const Observation> rows) {
  std::string out = "model,scenario,utility,entropy,integration,reflective\n";
  for (const Observation& o : rows) {
    out += ObservationCsvFields(o);
    out += '\n';
  }
  return out;
}

std::string WriteDatasetJson(std::span<const Observation> rows) {
  Json doc = Json::array();
  for (const Observation& o : rows) doc.push_back(ObservationJson(o));
  return doc.dump(2) + "\n";
}

std::string WriteScoresCsv(std::span<const ScoreRecord> records) {
  std::string out =
      "model,scenario,utility,entropy,integration,reflective,B,D,E,E*,Delta\n";
  for (const ScoreRecord& r : records) {
    out += fmt::format("{},{},{},{},{},{}\n", ObservationCsvFields(r.observation),
                       FormatExact(r.barrier), FormatExact(r.denominator),
                       FormatExact(r.reduced), FormatExact(r.generalized),
                       FormatExact(r.gain));
  }
  return out;
}

std::string WriteScoresJson(std::span<const ScoreRecord> records) {
  Json doc = Json::array();
  for (const ScoreRecord& r : records) {
    Json j = ObservationJson(r.observation);
    j["B"] = r.barrier;
    j["D"] = r.denominator;
    j["E"] = r.reduced;
    j["E*"] = r.generalized;
    j["Delta"] = r.gain;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIo, fmt::format("failed reading '{}'", path.string()));
  }
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, fmt::format("cannot write '{}'", path.string()));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(ErrorCode::kIo, fmt::format("failed writing '{}'", path.string()));
  }
}

}  // namespace stabscore
