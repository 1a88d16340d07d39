#pragma once

#include <string>
#include <vector>

namespace linerate::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name, -1 if absent.
  int column(const std::string& name) const;
};

// Reads a delimited UTF-8 file with a header row. Cells are trimmed of
// surrounding whitespace; no quoting support (none of our formats need it).
Table read_csv(const std::string& path, char delimiter = ',');

std::vector<std::string> split_line(const std::string& line, char delimiter);

// Locale-independent numeric formatting. format_full round-trips doubles
// exactly; format_fixed is for human-facing output.
std::string format_full(double v);
std::string format_fixed(double v, int decimals);

// Locale-independent parse; throws IoError naming `context` on failure.
double parse_double(const std::string& cell, const std::string& context);
long parse_long(const std::string& cell, const std::string& context);

void write_lines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace linerate::csv
