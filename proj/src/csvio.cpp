#include "nomavlc/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nomavlc::csv {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void Table::add_row(std::vector<std::string> cells) {
  rows.push_back(std::move(cells));
}

std::string cell(double value) { return format_double(value); }
std::string cell(int value) { return std::to_string(value); }
std::string cell(std::size_t value) { return std::to_string(value); }
std::string cell(const std::string& value) { return value; }

void write_table(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& c : table.comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ",";
    out << table.header[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace nomavlc::csv
