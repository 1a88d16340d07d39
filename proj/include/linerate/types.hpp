#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>

namespace linerate {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;

inline constexpr int kMonthsPerYear = 12;
inline constexpr int kHoursPerYear = 8760;  // non-leap convention

// Month lengths of the non-leap simulation year.
inline constexpr std::array<int, 12> kDaysPerMonth = {31, 28, 31, 30, 31, 30,
                                                      31, 31, 30, 31, 30, 31};

inline constexpr bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

inline constexpr int days_in_month(int year, int month) {
  return (month == 2 && is_leap_year(year)) ? 29 : kDaysPerMonth[month - 1];
}

// Serial day number for civil date, days since 1970-01-01 (proleptic Gregorian).
constexpr long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return static_cast<long>(era) * 146097L + static_cast<long>(doe) - 719468L;
}

// First hour-of-year (0-based) of a 1-based month in the 8760-hour year.
constexpr int first_hour_of_month(int month) {
  int h = 0;
  for (int m = 1; m < month; ++m) h += kDaysPerMonth[m - 1] * 24;
  return h;
}

// 1-based month containing a 0-based hour of the 8760-hour year.
constexpr int month_of_hour(int hour) {
  int m = 1;
  while (m < 12 && hour >= first_hour_of_month(m + 1)) ++m;
  return m;
}

}  // namespace linerate
