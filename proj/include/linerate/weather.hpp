#pragma once

#include "linerate/types.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linerate::weather {

struct HourStamp {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;   // 0..23
  auto operator<=>(const HourStamp&) const = default;
};

// Hours since 1970-01-01 00:00.
long hours_from_epoch(const HourStamp& t);

std::string to_string(const HourStamp& t);

struct WeatherPoint {
  HourStamp time;
  double air_temp = 0.0;                  // deg C
  std::optional<double> wind_speed = {};  // m/s; empty = use the policy wind
};

struct WeatherSeries {
  std::string station;
  std::vector<WeatherPoint> points;  // strictly increasing timestamps
};

// Column names and timestamp layout of a weather CSV; station exports vary.
struct CsvSchema {
  std::string time_column = "datetime";
  std::string temp_column = "temperature";
  std::string wind_column = "";              // empty = no wind data
  std::string time_format = "%Y-%m-%d %H:%M";  // strptime-style
  char delimiter = ',';
  std::string station = "";  // label; defaults to the file name
};

struct LoadSummary {
  size_t rows = 0;            // data rows parsed
  size_t points = 0;          // points in the resulting series
  size_t missing_hours = 0;   // gaps between first and last stamp
  long longest_gap_hours = 0; // longest run of consecutive missing hours
};

// Loads, sorts and validates an hourly weather CSV. Duplicate timestamps and
// unparseable rows are errors naming the offending row numbers; gaps are
// tolerated and reported through `summary`.
WeatherSeries load_weather_csv(const std::string& path, const CsvSchema& schema,
                               LoadSummary* summary = nullptr);

struct MonthlyMaxEntry {
  double max_temp = 0.0;
  int hours_seen = 0;
  bool complete = false;  // every hour of the calendar month present
};

struct MonthlyMaxTable {
  std::string station;
  std::map<std::pair<int, int>, MonthlyMaxEntry> cells;  // (year, month) -> entry

  int first_year() const;
  int last_year() const;
};

MonthlyMaxTable monthly_maxima(const WeatherSeries& series);

// (year, annual max temp) for each year present, ascending.
std::vector<std::pair<int, double>> annual_maxima(const WeatherSeries& series);

// Trailing moving average over `window` years; output starts at the first
// year with a full window. Returns empty when the window exceeds the series.
std::vector<std::pair<int, double>> moving_average(
    const std::vector<std::pair<int, double>>& annual_values, int window);

// Rectangular years x 12-months matrix of monthly maxima; missing months are
// empty cells. Values round-trip exactly through load_pivot_csv.
void write_pivot_csv(const MonthlyMaxTable& table, const std::string& path);
MonthlyMaxTable load_pivot_csv(const std::string& path);

// year, annual max, and 3/5/10-year trailing means, one row per year.
void write_analytics_csv(const WeatherSeries& series, const std::string& path);

// Hourly temperatures of one calendar year mapped onto the 8760-hour
// simulation year. Feb 29 data is dropped (count reported via the out
// parameter); any other missing hour is an error.
std::array<double, kHoursPerYear> year_hourly_temps(const WeatherSeries& series,
                                                    int year,
                                                    int* feb29_dropped = nullptr);

}  // namespace linerate::weather
