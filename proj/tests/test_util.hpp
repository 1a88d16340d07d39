#pragma once

#include "linerate/network.hpp"
#include "linerate/weather.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("linerate_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// A complete month of hourly points with the given peak temperature planted
// at noon of the first day; other hours sit `base` degrees lower.
inline void append_month(linerate::weather::WeatherSeries& series, int year, int month,
                         double peak, double base_offset = 8.0) {
  const int days = linerate::days_in_month(year, month);
  for (int d = 1; d <= days; ++d)
    for (int h = 0; h < 24; ++h) {
      linerate::weather::WeatherPoint p;
      p.time = {year, month, d, h};
      p.air_temp = (d == 1 && h == 12) ? peak : peak - base_offset;
      series.points.push_back(p);
    }
}

// Two-bus corridor: cheap generator at bus 1, load at bus 2, one line.
inline linerate::opf::NetworkCase two_bus_case(double load_mw, double limit_mw,
                                               double gen_cost_per_mwh = 10.0,
                                               double gen_max_mw = 100.0) {
  linerate::opf::NetworkCase net;
  net.name = "two-bus";
  net.base_mva = 100.0;
  net.reference_bus = 0;
  net.buses = {{1, "supply", 0.0}, {2, "load", load_mw}};
  net.lines = {{0, 1, 10.0, limit_mw, "1-2"}};
  net.generators = {{0, 0.0, gen_max_mw, {0.0, gen_cost_per_mwh, 0.0}, "g1"}};
  return net;
}

}  // namespace testutil
