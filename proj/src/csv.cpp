#include "linerate/csv.hpp"

#include "linerate/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace linerate::csv {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

int Table::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

Table read_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      table.header = split_line(line, delimiter);
      first = false;
      continue;
    }
    if (trim(line).empty()) continue;
    table.rows.push_back(split_line(line, delimiter));
  }
  if (first) throw IoError("empty file (no header row): " + path);
  return table;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

double parse_double(const std::string& cell, const std::string& context) {
  double value = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw IoError("cannot parse number '" + cell + "' (" + context + ")");
  return value;
}

long parse_long(const std::string& cell, const std::string& context) {
  long value = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw IoError("cannot parse integer '" + cell + "' (" + context + ")");
  return value;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace linerate::csv
