#include "losdof/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "losdof/error.hpp"

namespace losdof::cli {

std::string tool_version() { return LOSDOF_VERSION; }

std::string csv_number(double value)
{
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_number(std::uint64_t value) { return std::to_string(value); }

void CsvTable::add_row(std::vector<std::string> cells)
{
  if (cells.size() != header_.size())
    throw DimensionMismatch("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells)
{
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::render(const RunMetadata& meta) const
{
  std::string out;
  out += "# tool: losdof " + tool_version() + "\n";
  out += "# command: " + meta.command + "\n";
  out += "# seed: " + std::to_string(meta.seed) + "\n";
  out += "# config: " + meta.config.dump() + "\n";
  append_line(out, header_);
  for (const auto& row : rows_) append_line(out, row);
  return out;
}

json with_metadata(const RunMetadata& meta, const json& body)
{
  json doc{{"tool", "losdof"}, {"version", tool_version()}, {"command", meta.command},
           {"seed", meta.seed}, {"config", meta.config}};
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

void ensure_directory(const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

void write_csv(const std::filesystem::path& path, const CsvTable& table, const RunMetadata& meta)
{
  write_text(path, table.render(meta));
}

void write_json(const std::filesystem::path& path, const json& doc)
{
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace losdof::cli
