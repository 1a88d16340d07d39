#pragma once

#include "linerate/criteria.hpp"
#include "linerate/network.hpp"
#include "linerate/opf.hpp"
#include "linerate/thermal.hpp"
#include "linerate/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace linerate::sim {

// Deterministic synthetic hourly demand-ratio profile: daily cosine around an
// afternoon peak, winter and summer seasonal cosines, a weekend factor, and
// seeded multiplicative noise.
struct DemandProfileParams {
  double base = 1.0;
  double daily_amplitude = 0.15;
  int daily_peak_hour = 14;
  double winter_amplitude = 0.10;  // peaks mid-January
  double summer_amplitude = 0.08;  // peaks mid-July
  double weekend_factor = 0.92;
  int first_weekday = 0;  // day of week of hour 0 (0 = Sunday)
  double noise = 0.03;
  unsigned long long seed = 7;
};

Vector synthetic_demand_profile(const DemandProfileParams& params);

Vector load_demand_csv(const std::string& path);
void write_demand_csv(const Vector& ratios, const std::string& path);

struct YearRunConfig {
  opf::NetworkCase network;
  thermal::ConductorSpec conductor;
  thermal::AmbientConditions policy_ambient;  // wind/solar used for all ratings
  criteria::TemperatureCriteria monthly_criteria;
  std::array<double, kHoursPerYear> year_temps{};  // realized weather, for DLR
  bool has_year_temps = false;
  Vector demand_ratio;  // 8760
  double voll = 9000.0;
  double dlr_fraction = 0.10;
  int pwl_segments = 10;
  int jobs = 1;
  std::string checkpoint_dir;  // empty = keep everything in memory only
  std::string config_hash;     // guards checkpoint reuse
};

// Aggregates of one policy-year: 365 days x 24 hourly solves.
struct YearRunResult {
  criteria::Policy policy = criteria::Policy::Conventional;
  std::array<double, 12> monthly_cost{};
  double annual_cost = 0.0;
  std::array<double, 12> monthly_shed_mwh{};
  std::array<long, 12> monthly_binding_hours{};  // line-hours at the limit
  std::vector<long> line_binding_hours;          // per line, year total
  Vector line_abs_flow_mw;                       // per line, sum of |flow|
  std::vector<double> day_cost;                  // 365
  double max_balance_residual = 0.0;
  double max_flow_residual = 0.0;
  std::vector<int> dlr_lines;  // only for DynamicSubset
  std::string config_hash;
};

// Line-hours are counted as binding when the flow is within this relative
// tolerance of the limit.
inline constexpr double kBindingRelTol = 1e-6;

criteria::TemperatureCriteria criteria_for_policy(const YearRunConfig& config,
                                                  criteria::Policy policy);

// Runs one policy over the 8760-hour year. DynamicSubset requires the
// Conventional baseline (line selection depends on its congestion ranking).
YearRunResult run_year(const YearRunConfig& config, criteria::Policy policy,
                       const YearRunResult* conventional_baseline = nullptr);

struct CostReport {
  std::vector<criteria::Policy> policies;
  Matrix monthly_cost;     // 12 x P, $
  Vector annual_cost;      // P
  Matrix normalized;       // 12 x P, conventional month = 100
  Matrix shed_mwh;         // 12 x P
  Matrix binding_hours;    // 12 x P
};

// Merges per-policy results into one report; requires a conventional run for
// normalization and identical config hashes across fragments.
CostReport compare_policies(const std::vector<YearRunResult>& results);

// monthly_costs.csv, normalized.csv, annual.csv, shed.csv plus SVG charts.
void emit_reports(const CostReport& report, const std::string& out_dir);
CostReport load_report(const std::string& dir);

// Re-aggregates persisted day files (checkpoint_dir layout) into results.
std::vector<YearRunResult> load_checkpoints(const std::string& checkpoint_dir,
                                            int num_lines);

}  // namespace linerate::sim
