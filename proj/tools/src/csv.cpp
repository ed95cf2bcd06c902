#include "magnon_cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magnon::cli {
namespace {

std::string format_value(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out.push_back(sep);
    }
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::string strip(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

}  // namespace

void write_csv(const CsvTable& table, const std::string& path) {
  if (table.columns.empty() || table.rows.empty()) {
    throw std::invalid_argument("write_csv: refusing to write an empty table");
  }
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("write_csv: row width does not match the column list");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
  }
  out << "# magnon-echo v1\n";
  out << "# " << table.config_comment << "\n";
  out << "# columns: " << join(table.columns, ',') << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) {
        out << ',';
      }
      out << format_value(row[i]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) {
    throw std::runtime_error("write_csv: I/O failure writing '" + path + "'");
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_csv: cannot open '" + path + "'");
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || strip(line) != "# magnon-echo v1") {
    throw std::runtime_error("read_csv: '" + path + "' lacks the magnon-echo v1 header");
  }
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("read_csv: '" + path + "' lacks the config comment line");
  }
  table.config_comment = strip(line.substr(2));
  if (!std::getline(in, line) || line.rfind("# columns: ", 0) != 0) {
    throw std::runtime_error("read_csv: '" + path + "' lacks the columns line");
  }
  for (const std::string& name : split(strip(line.substr(11)), ',')) {
    table.columns.push_back(strip(name));
  }
  while (std::getline(in, line)) {
    const std::string trimmed = strip(line);
    if (trimmed.empty()) {
      continue;
    }
    std::vector<double> row;
    for (const std::string& cell : split(trimmed, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::runtime_error("read_csv: bad numeric cell '" + cell + "' in '" + path + "'");
      }
      if (used != strip(cell).size() && used != cell.size()) {
        throw std::runtime_error("read_csv: bad numeric cell '" + cell + "' in '" + path + "'");
      }
      row.push_back(value);
    }
    if (row.size() != table.columns.size()) {
      throw std::runtime_error("read_csv: ragged row in '" + path + "'");
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) {
    throw std::runtime_error("read_csv: '" + path + "' has no data rows");
  }
  return table;
}

}  // namespace magnon::cli
