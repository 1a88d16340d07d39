#include "linerate/weather.hpp"

#include "linerate/csv.hpp"
#include "linerate/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace linerate::weather {

long hours_from_epoch(const HourStamp& t) {
  return days_from_civil(t.year, t.month, t.day) * 24L + t.hour;
}

std::string to_string(const HourStamp& t) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:00", t.year, t.month, t.day,
                t.hour);
  return buf;
}

namespace {

HourStamp parse_stamp(const std::string& cell, const std::string& format,
                      size_t row_number) {
  std::tm tm = {};
  std::istringstream in(cell);
  in >> std::get_time(&tm, format.c_str());
  if (in.fail())
    throw IoError("row " + std::to_string(row_number) + ": cannot parse timestamp '" +
                  cell + "' with format '" + format + "'");
  HourStamp t;
  t.year = tm.tm_year + 1900;
  t.month = tm.tm_mon + 1;
  t.day = tm.tm_mday;
  t.hour = tm.tm_hour;
  if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > days_in_month(t.year, t.month) ||
      t.hour < 0 || t.hour > 23)
    throw IoError("row " + std::to_string(row_number) + ": timestamp '" + cell +
                  "' is not a valid calendar hour");
  return t;
}

}  // namespace

WeatherSeries load_weather_csv(const std::string& path, const CsvSchema& schema,
                               LoadSummary* summary) {
  if (!std::filesystem::exists(path)) throw IoError("weather file not found: " + path);
  const csv::Table table = csv::read_csv(path, schema.delimiter);
  const int time_col = table.column(schema.time_column);
  const int temp_col = table.column(schema.temp_column);
  if (time_col < 0)
    throw IoError(path + ": missing timestamp column '" + schema.time_column + "'");
  if (temp_col < 0)
    throw IoError(path + ": missing temperature column '" + schema.temp_column + "'");
  int wind_col = -1;
  if (!schema.wind_column.empty()) {
    wind_col = table.column(schema.wind_column);
    if (wind_col < 0)
      throw IoError(path + ": missing wind column '" + schema.wind_column + "'");
  }

  struct Parsed {
    WeatherPoint point;
    size_t row;  // 1-based file row, header = row 1
  };
  std::vector<Parsed> parsed;
  parsed.reserve(table.rows.size());
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const auto& cells = table.rows[i];
    const size_t row_number = i + 2;
    const size_t need = static_cast<size_t>(std::max(time_col, std::max(temp_col, wind_col)));
    if (cells.size() <= need)
      throw IoError("row " + std::to_string(row_number) + ": expected at least " +
                    std::to_string(need + 1) + " columns, got " +
                    std::to_string(cells.size()));
    Parsed p;
    p.row = row_number;
    p.point.time = parse_stamp(cells[time_col], schema.time_format, row_number);
    p.point.air_temp = csv::parse_double(cells[temp_col],
                                         path + " row " + std::to_string(row_number));
    if (!(p.point.air_temp >= -90 && p.point.air_temp <= 90))
      throw IoError("row " + std::to_string(row_number) + ": air temperature " +
                    cells[temp_col] + " outside [-90, 90]");
    if (wind_col >= 0 && !cells[wind_col].empty()) {
      const double w = csv::parse_double(cells[wind_col],
                                         path + " row " + std::to_string(row_number));
      if (w < 0)
        throw IoError("row " + std::to_string(row_number) + ": negative wind speed");
      p.point.wind_speed = w;
    }
    parsed.push_back(std::move(p));
  }
  if (parsed.empty()) throw IoError(path + ": no data rows");

  std::stable_sort(parsed.begin(), parsed.end(), [](const Parsed& a, const Parsed& b) {
    return a.point.time < b.point.time;
  });
  for (size_t i = 1; i < parsed.size(); ++i) {
    if (parsed[i].point.time == parsed[i - 1].point.time)
      throw IoError("duplicate timestamp " + to_string(parsed[i].point.time) +
                    " at rows " + std::to_string(parsed[i - 1].row) + " and " +
                    std::to_string(parsed[i].row));
  }

  WeatherSeries series;
  series.station = schema.station.empty()
                       ? std::filesystem::path(path).stem().string()
                       : schema.station;
  series.points.reserve(parsed.size());
  for (auto& p : parsed) series.points.push_back(p.point);

  if (summary) {
    summary->rows = table.rows.size();
    summary->points = series.points.size();
    summary->missing_hours = 0;
    summary->longest_gap_hours = 0;
    for (size_t i = 1; i < series.points.size(); ++i) {
      const long gap = hours_from_epoch(series.points[i].time) -
                       hours_from_epoch(series.points[i - 1].time) - 1;
      summary->missing_hours += static_cast<size_t>(gap);
      summary->longest_gap_hours = std::max(summary->longest_gap_hours, gap);
    }
  }
  return series;
}

int MonthlyMaxTable::first_year() const {
  if (cells.empty()) throw std::invalid_argument("empty monthly-max table");
  return cells.begin()->first.first;
}

int MonthlyMaxTable::last_year() const {
  if (cells.empty()) throw std::invalid_argument("empty monthly-max table");
  return cells.rbegin()->first.first;
}

MonthlyMaxTable monthly_maxima(const WeatherSeries& series) {
  if (series.points.empty())
    throw std::invalid_argument("monthly_maxima: empty weather series");
  MonthlyMaxTable table;
  table.station = series.station;
  for (const auto& p : series.points) {
    auto key = std::make_pair(p.time.year, p.time.month);
    auto it = table.cells.find(key);
    if (it == table.cells.end()) {
      table.cells[key] = MonthlyMaxEntry{p.air_temp, 1, false};
    } else {
      it->second.max_temp = std::max(it->second.max_temp, p.air_temp);
      it->second.hours_seen += 1;
    }
  }
  for (auto& [key, entry] : table.cells)
    entry.complete = entry.hours_seen == days_in_month(key.first, key.second) * 24;
  return table;
}

std::vector<std::pair<int, double>> annual_maxima(const WeatherSeries& series) {
  std::map<int, double> by_year;
  for (const auto& p : series.points) {
    auto it = by_year.find(p.time.year);
    if (it == by_year.end())
      by_year[p.time.year] = p.air_temp;
    else
      it->second = std::max(it->second, p.air_temp);
  }
  return {by_year.begin(), by_year.end()};
}

std::vector<std::pair<int, double>> moving_average(
    const std::vector<std::pair<int, double>>& annual_values, int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  std::vector<std::pair<int, double>> out;
  if (annual_values.size() < static_cast<size_t>(window)) return out;
  for (size_t i = window - 1; i < annual_values.size(); ++i) {
    double sum = 0;
    for (size_t j = i + 1 - window; j <= i; ++j) sum += annual_values[j].second;
    out.emplace_back(annual_values[i].first, sum / window);
  }
  return out;
}

void write_pivot_csv(const MonthlyMaxTable& table, const std::string& path) {
  std::vector<std::string> lines;
  std::string header = "year";
  for (int m = 1; m <= 12; ++m) header += "," + std::to_string(m);
  lines.push_back(header);
  if (!table.cells.empty()) {
    for (int y = table.first_year(); y <= table.last_year(); ++y) {
      std::string line = std::to_string(y);
      for (int m = 1; m <= 12; ++m) {
        auto it = table.cells.find({y, m});
        line += ",";
        if (it != table.cells.end()) line += csv::format_full(it->second.max_temp);
      }
      lines.push_back(line);
    }
  }
  csv::write_lines(path, lines);
}

MonthlyMaxTable load_pivot_csv(const std::string& path) {
  const csv::Table table = csv::read_csv(path);
  if (table.header.empty() || table.header[0] != "year")
    throw IoError(path + ": not a monthly-max pivot (first column must be 'year')");
  MonthlyMaxTable out;
  out.station = std::filesystem::path(path).stem().string();
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const auto& cells = table.rows[i];
    const int year =
        static_cast<int>(csv::parse_long(cells[0], path + " row " + std::to_string(i + 2)));
    for (int m = 1; m <= 12 && static_cast<size_t>(m) < cells.size(); ++m) {
      if (cells[m].empty()) continue;
      const double v =
          csv::parse_double(cells[m], path + " row " + std::to_string(i + 2));
      // Re-ingested pivots carry no hourly counts; treat entries as complete.
      out.cells[{year, m}] =
          MonthlyMaxEntry{v, days_in_month(year, m) * 24, true};
    }
  }
  return out;
}

void write_analytics_csv(const WeatherSeries& series, const std::string& path) {
  const auto annual = annual_maxima(series);
  const auto ma3 = moving_average(annual, 3);
  const auto ma5 = moving_average(annual, 5);
  const auto ma10 = moving_average(annual, 10);
  auto lookup = [](const std::vector<std::pair<int, double>>& v, int year) {
    for (const auto& [y, value] : v)
      if (y == year) return csv::format_full(value);
    return std::string();
  };
  std::vector<std::string> lines;
  lines.push_back("year,annual_max,ma3,ma5,ma10");
  for (const auto& [year, value] : annual)
    lines.push_back(std::to_string(year) + "," + csv::format_full(value) + "," +
                    lookup(ma3, year) + "," + lookup(ma5, year) + "," +
                    lookup(ma10, year));
  csv::write_lines(path, lines);
}

std::array<double, kHoursPerYear> year_hourly_temps(const WeatherSeries& series,
                                                    int year, int* feb29_dropped) {
  std::array<double, kHoursPerYear> temps;
  std::array<bool, kHoursPerYear> seen{};
  int dropped = 0;
  size_t in_year = 0;
  for (const auto& p : series.points) {
    if (p.time.year != year) continue;
    ++in_year;
    if (p.time.month == 2 && p.time.day == 29) {
      ++dropped;
      continue;
    }
    int hour = first_hour_of_month(p.time.month) + (p.time.day - 1) * 24 + p.time.hour;
    temps[hour] = p.air_temp;
    seen[hour] = true;
  }
  if (feb29_dropped) *feb29_dropped = dropped;
  if (in_year == 0)
    throw std::invalid_argument("weather series has no data for year " +
                                std::to_string(year));
  size_t missing = 0;
  int first_missing = -1;
  for (int h = 0; h < kHoursPerYear; ++h) {
    if (!seen[h]) {
      ++missing;
      if (first_missing < 0) first_missing = h;
    }
  }
  if (missing > 0) {
    const int month = month_of_hour(first_missing);
    const int day_in_month = (first_missing - first_hour_of_month(month)) / 24 + 1;
    throw std::invalid_argument(
        "weather year " + std::to_string(year) + " is incomplete: " +
        std::to_string(missing) + " of 8760 hours missing (first: " +
        to_string({year, month, day_in_month, first_missing % 24}) + ")");
  }
  return temps;
}

}  // namespace linerate::weather
