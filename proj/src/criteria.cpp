#include "linerate/criteria.hpp"

#include "linerate/csv.hpp"
#include "linerate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linerate::criteria {

const char* policy_name(Policy policy) {
  switch (policy) {
    case Policy::Conventional: return "conventional";
    case Policy::Monthly: return "monthly";
    case Policy::Seasonal: return "seasonal";
    case Policy::SemiAnnual: return "semiannual";
    case Policy::DynamicSubset: return "dlr";
  }
  return "?";
}

Policy policy_from_name(const std::string& name) {
  for (Policy p : {Policy::Conventional, Policy::Monthly, Policy::Seasonal,
                   Policy::SemiAnnual, Policy::DynamicSubset})
    if (name == policy_name(p)) return p;
  throw std::invalid_argument("unknown policy '" + name +
                              "' (expected conventional|monthly|seasonal|semiannual|dlr)");
}

SeasonMap seasonal_blocks() {
  //            Jan Feb Mar Apr May Jun Jul Aug Sep Oct Nov Dec
  return SeasonMap{0,  0,  1,  1,  2,  2,  2,  2,  2,  1,  1,  0};
}

SeasonMap semiannual_blocks() {
  return SeasonMap{0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0};
}

TemperatureCriteria conventional_criteria() {
  TemperatureCriteria c;
  c.design_temp.fill(kReferenceTemp);
  c.policy = Policy::Conventional;
  c.provenance = "fixed reference";
  return c;
}

namespace {

std::vector<double> yearly_month_maxima(const weather::MonthlyMaxTable& table,
                                        int month, bool include_incomplete) {
  std::vector<double> values;
  for (const auto& [key, entry] : table.cells)
    if (key.second == month && (entry.complete || include_incomplete))
      values.push_back(entry.max_temp);
  return values;
}

double sample_stddev(const std::vector<double>& values, double mean) {
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (values.size() - 1));
}

const char* kMonthNames[12] = {"January",   "February", "March",    "April",
                               "May",       "June",     "July",     "August",
                               "September", "October",  "November", "December"};

}  // namespace

TemperatureCriteria derive_monthly_criteria(const weather::MonthlyMaxTable& table,
                                            bool include_incomplete) {
  TemperatureCriteria out;
  out.policy = Policy::Monthly;
  for (int m = 1; m <= 12; ++m) {
    const auto values = yearly_month_maxima(table, m, include_incomplete);
    if (values.size() < 2)
      throw std::invalid_argument(
          std::string("derive_monthly_criteria: ") + kMonthNames[m - 1] + " has " +
          std::to_string(values.size()) +
          " usable year(s); at least 2 complete years are required");
    const double peak = *std::max_element(values.begin(), values.end());
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    out.design_temp[m - 1] = peak + 3.0 * sample_stddev(values, mean);
  }
  out.provenance = table.station + " " + std::to_string(table.first_year()) + "-" +
                   std::to_string(table.last_year());
  return out;
}

TemperatureCriteria blockify(const TemperatureCriteria& monthly, const SeasonMap& map,
                             Policy tag) {
  if (monthly.policy != Policy::Monthly)
    throw std::invalid_argument("blockify expects monthly criteria");
  TemperatureCriteria out;
  out.policy = tag;
  out.provenance = monthly.provenance;
  for (int m = 0; m < 12; ++m) {
    double block_max = monthly.design_temp[m];
    for (int k = 0; k < 12; ++k)
      if (map[k] == map[m]) block_max = std::max(block_max, monthly.design_temp[k]);
    out.design_temp[m] = block_max;
  }
  return out;
}

double capacity_ratio(const thermal::ConductorSpec& spec, double design_temp,
                      const thermal::AmbientConditions& policy_ambient,
                      double reference_temp) {
  if (design_temp > spec.max_surface_temp)
    throw std::invalid_argument("capacity_ratio: design temperature " +
                                std::to_string(design_temp) +
                                " exceeds the conductor surface temperature");
  thermal::AmbientConditions amb = policy_ambient;
  amb.air_temp = design_temp;
  const double at_design = thermal::ampacity(spec, amb);
  amb.air_temp = reference_temp;
  const double at_reference = thermal::ampacity(spec, amb);
  return at_design / at_reference;
}

double exceedance_probability(const weather::MonthlyMaxTable& table, int month,
                              double criteria_temp) {
  if (month < 1 || month > 12)
    throw std::invalid_argument("exceedance_probability: month out of range");
  const auto values = yearly_month_maxima(table, month, false);
  if (values.size() < 2)
    throw std::invalid_argument(
        std::string("exceedance_probability: ") + kMonthNames[month - 1] +
        " needs at least 2 complete years");
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  const double sigma = sample_stddev(values, mean);
  if (sigma == 0) {
    const double peak = *std::max_element(values.begin(), values.end());
    return criteria_temp >= peak ? 0.0 : 1.0;
  }
  return 0.5 * std::erfc((criteria_temp - mean) / (sigma * std::sqrt(2.0)));
}

RatingSchedule build_schedule(const opf::NetworkCase& net, Policy policy,
                              const TemperatureCriteria& static_criteria,
                              const thermal::ConductorSpec& spec,
                              const thermal::AmbientConditions& policy_ambient,
                              const std::array<double, kHoursPerYear>* year_temps,
                              const std::vector<int>* dlr_lines) {
  const int lines = static_cast<int>(net.lines.size());
  RatingSchedule schedule;
  schedule.policy = policy;
  schedule.limits_mw.resize(lines, kHoursPerYear);
  schedule.ratio_trace.resize(kHoursPerYear);

  const TemperatureCriteria& criteria =
      policy == Policy::DynamicSubset ? conventional_criteria() : static_criteria;

  // Per-month static ratios; months without thermal headroom are zero-rated.
  std::array<double, 12> month_ratio{};
  std::array<bool, 12> month_zeroed{};
  for (int m = 0; m < 12; ++m) {
    try {
      month_ratio[m] = capacity_ratio(spec, criteria.design_temp[m], policy_ambient);
    } catch (const NoThermalHeadroom&) {
      month_ratio[m] = 0.0;
      month_zeroed[m] = true;
    }
  }

  if (policy == Policy::DynamicSubset) {
    if (!year_temps)
      throw std::invalid_argument("build_schedule: dlr policy needs hourly temperatures");
    if (!dlr_lines || dlr_lines->empty())
      throw std::invalid_argument("build_schedule: dlr policy needs a nonempty line set");
    for (int l : *dlr_lines)
      if (l < 0 || l >= lines)
        throw std::invalid_argument("build_schedule: dlr line index out of range");
    schedule.dlr_lines = *dlr_lines;
    std::sort(schedule.dlr_lines.begin(), schedule.dlr_lines.end());
  }

  // Hourly ratio trace: block ratio for static policies, realized-weather
  // ratio for the DLR subset.
  std::vector<char> hour_zeroed(kHoursPerYear, 0);
  if (policy == Policy::DynamicSubset) {
    for (int h = 0; h < kHoursPerYear; ++h) {
      try {
        schedule.ratio_trace[h] =
            capacity_ratio(spec, (*year_temps)[h], policy_ambient);
      } catch (const NoThermalHeadroom&) {
        schedule.ratio_trace[h] = 0.0;
        hour_zeroed[h] = 1;
      }
    }
  } else {
    for (int h = 0; h < kHoursPerYear; ++h) {
      const int m = month_of_hour(h) - 1;
      schedule.ratio_trace[h] = month_ratio[m];
      hour_zeroed[h] = month_zeroed[m];
    }
  }

  for (int l = 0; l < lines; ++l) {
    const double base = net.lines[l].base_limit_mw;
    const bool hourly = policy == Policy::DynamicSubset &&
                        std::binary_search(schedule.dlr_lines.begin(),
                                           schedule.dlr_lines.end(), l);
    for (int h = 0; h < kHoursPerYear; ++h) {
      double ratio;
      bool zeroed;
      if (policy == Policy::DynamicSubset) {
        ratio = hourly ? schedule.ratio_trace[h] : 1.0;
        zeroed = hourly && hour_zeroed[h];
      } else {
        ratio = schedule.ratio_trace[h];
        zeroed = hour_zeroed[h] != 0;
      }
      schedule.limits_mw(l, h) = base * ratio;
      if (zeroed) schedule.zeroed.emplace_back(l, h);
    }
  }
  return schedule;
}

std::vector<int> select_dlr_lines(int num_lines,
                                  const std::vector<long>& binding_hours,
                                  const Vector& total_abs_flow_mw, double fraction) {
  if (num_lines <= 0) throw std::invalid_argument("select_dlr_lines: no lines");
  if (static_cast<int>(binding_hours.size()) != num_lines ||
      total_abs_flow_mw.size() != num_lines)
    throw std::invalid_argument("select_dlr_lines: baseline statistics size mismatch");
  const int count =
      std::max(1, static_cast<int>(std::floor(fraction * num_lines)));
  std::vector<int> order(num_lines);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (binding_hours[a] != binding_hours[b]) return binding_hours[a] > binding_hours[b];
    if (total_abs_flow_mw[a] != total_abs_flow_mw[b])
      return total_abs_flow_mw[a] > total_abs_flow_mw[b];
    return a < b;
  });
  std::vector<int> picked(order.begin(), order.begin() + count);
  std::sort(picked.begin(), picked.end());
  return picked;
}

void write_criteria_csv(const TemperatureCriteria& criteria, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back("month,temp_c,policy");
  for (int m = 0; m < 12; ++m)
    lines.push_back(std::to_string(m + 1) + "," +
                    csv::format_full(criteria.design_temp[m]) + "," +
                    policy_name(criteria.policy));
  csv::write_lines(path, lines);
}

TemperatureCriteria load_criteria_csv(const std::string& path) {
  const csv::Table table = csv::read_csv(path);
  if (table.rows.size() != 12)
    throw IoError(path + ": expected 12 criteria rows, found " +
                  std::to_string(table.rows.size()));
  const int month_col = table.column("month");
  const int temp_col = table.column("temp_c");
  const int policy_col = table.column("policy");
  if (month_col < 0 || temp_col < 0 || policy_col < 0)
    throw IoError(path + ": expected header month,temp_c,policy");
  TemperatureCriteria out;
  std::array<bool, 12> seen{};
  for (const auto& row : table.rows) {
    const long m = csv::parse_long(row[month_col], path);
    if (m < 1 || m > 12) throw IoError(path + ": month out of range");
    if (seen[m - 1]) throw IoError(path + ": duplicate month " + std::to_string(m));
    seen[m - 1] = true;
    out.design_temp[m - 1] = csv::parse_double(row[temp_col], path);
    out.policy = policy_from_name(row[policy_col]);
  }
  out.provenance = path;
  return out;
}

void write_schedule_csv(const RatingSchedule& schedule, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(static_cast<size_t>(schedule.limits_mw.rows()) * kHoursPerYear + 1);
  lines.push_back("line,hour,limit_mw");
  for (int l = 0; l < schedule.limits_mw.rows(); ++l)
    for (int h = 0; h < kHoursPerYear; ++h)
      lines.push_back(std::to_string(l + 1) + "," + std::to_string(h) + "," +
                      csv::format_full(schedule.limits_mw(l, h)));
  csv::write_lines(path, lines);
}

}  // namespace linerate::criteria
