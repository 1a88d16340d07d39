#pragma once

#include "linerate/network.hpp"
#include "linerate/thermal.hpp"
#include "linerate/types.hpp"
#include "linerate/weather.hpp"

#include <array>
#include <string>
#include <vector>

namespace linerate::criteria {

enum class Policy { Conventional, Monthly, Seasonal, SemiAnnual, DynamicSubset };

const char* policy_name(Policy policy);
Policy policy_from_name(const std::string& name);

// The conventional static-rating reference temperature (deg C).
inline constexpr double kReferenceTemp = 40.0;

struct TemperatureCriteria {
  std::array<double, 12> design_temp{};  // per month, deg C
  Policy policy = Policy::Conventional;
  std::string provenance;
};

// month (0-based) -> block id.
using SeasonMap = std::array<int, 12>;

// Dec-Feb winter, Mar-Apr and Oct-Nov spring/autumn, May-Sep summer.
SeasonMap seasonal_blocks();
// Nov-Apr and May-Oct halves.
SeasonMap semiannual_blocks();

TemperatureCriteria conventional_criteria();

// Per-month design temperature = max of the yearly monthly maxima plus three
// sample standard deviations. Incomplete months are excluded unless
// `include_incomplete`; every month needs at least two remaining years.
TemperatureCriteria derive_monthly_criteria(const weather::MonthlyMaxTable& table,
                                            bool include_incomplete = false);

// Collapses monthly criteria into block-constant criteria, each block taking
// the max of its member months.
TemperatureCriteria blockify(const TemperatureCriteria& monthly, const SeasonMap& map,
                             Policy tag);

// ampacity(design_temp) / ampacity(reference) with wind, solar and direction
// factor taken from `policy_ambient` (air_temp is overridden).
double capacity_ratio(const thermal::ConductorSpec& spec, double design_temp,
                      const thermal::AmbientConditions& policy_ambient,
                      double reference_temp = kReferenceTemp);

// Upper-tail probability that a month's yearly maximum exceeds criteria_temp,
// under a normal fit to the observed yearly maxima. One-sided; a full +/-3
// sigma band would correspond to roughly twice this value.
double exceedance_probability(const weather::MonthlyMaxTable& table, int month,
                              double criteria_temp);

struct RatingSchedule {
  Policy policy = Policy::Conventional;
  Matrix limits_mw;    // lines x 8760
  Vector ratio_trace;  // per-hour capacity ratio applied (to DLR lines under DynamicSubset)
  std::vector<int> dlr_lines;               // hourly-rated lines, ascending
  std::vector<std::pair<int, int>> zeroed;  // (line, hour) pairs with no thermal headroom
};

// Non-DLR lines carry base limit x capacity_ratio(block temperature of the
// hour); DLR lines carry base limit x hourly ratio from realized temperature.
// Hours without thermal headroom are zero-rated and flagged.
RatingSchedule build_schedule(const opf::NetworkCase& net, Policy policy,
                              const TemperatureCriteria& static_criteria,
                              const thermal::ConductorSpec& spec,
                              const thermal::AmbientConditions& policy_ambient,
                              const std::array<double, kHoursPerYear>* year_temps = nullptr,
                              const std::vector<int>* dlr_lines = nullptr);

// Ranks lines by congestion in a baseline year run (hours at the limit,
// ties by total |flow|, then by lower index) and keeps max(1, floor(fraction*L)).
std::vector<int> select_dlr_lines(int num_lines,
                                  const std::vector<long>& binding_hours,
                                  const Vector& total_abs_flow_mw, double fraction);

void write_criteria_csv(const TemperatureCriteria& criteria, const std::string& path);
TemperatureCriteria load_criteria_csv(const std::string& path);

void write_schedule_csv(const RatingSchedule& schedule, const std::string& path);

}  // namespace linerate::criteria
