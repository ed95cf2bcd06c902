#pragma once

#include <string>
#include <vector>

namespace magnon::cli {

// A rectangular numeric table headed by `# magnon-echo v1`, one comment line
// echoing the effective run configuration, and a `# columns:` line naming
// the fields of each row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string config_comment;
};

// Writes the table with 12-significant-digit decimal values, one row per
// line, newline-terminated. Throws std::invalid_argument for an empty table
// or ragged rows and std::runtime_error on I/O failure.
void write_csv(const CsvTable& table, const std::string& path);

// Parses a file produced by write_csv; the textual values round-trip
// exactly. Throws std::runtime_error on malformed or unreadable input.
CsvTable read_csv(const std::string& path);

}  // namespace magnon::cli
