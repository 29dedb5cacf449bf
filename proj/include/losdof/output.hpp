#pragma once

// Result files. CSV files start with `#` metadata lines (tool, version, seed,
// effective config as one-line JSON) followed by a header row; numbers use 17
// significant digits and lines end in LF. JSON documents carry the same
// metadata as top-level fields.

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace losdof::cli {

using json = nlohmann::ordered_json;

struct RunMetadata {
  std::string command;
  std::uint64_t seed = 0;
  json config;
};

std::string tool_version();

/// %.17g; non-finite values are written as nan, inf, -inf.
std::string csv_number(double value);
std::string csv_number(std::uint64_t value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Throws DimensionMismatch if the cell count differs from the header.
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string render(const RunMetadata& meta) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Metadata fields followed by `body`'s own fields.
json with_metadata(const RunMetadata& meta, const json& body);

/// Creates `dir` (and parents) if needed. Throws IoError.
void ensure_directory(const std::filesystem::path& dir);

/// Writes the bytes exactly as given. Throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);

void write_csv(const std::filesystem::path& path, const CsvTable& table, const RunMetadata& meta);
void write_json(const std::filesystem::path& path, const json& doc);

}  // namespace losdof::cli
