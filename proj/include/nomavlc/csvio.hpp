#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nomavlc::csv {

// Fixed-width-free numeric formatting shared by every writer so that
// reruns with identical inputs produce byte-identical files.
std::string format_double(double value);

struct Table {
  std::vector<std::string> comments;  // emitted first, one "# " line each
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

std::string cell(double value);
std::string cell(int value);
std::string cell(std::size_t value);
std::string cell(const std::string& value);

void write_table(const std::filesystem::path& path, const Table& table);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nomavlc::csv
