// linerate: weather-dependent line ratings, static-rating criteria from
// historical temperatures, and year-long dispatch-cost simulation.

#include "linerate/criteria.hpp"
#include "linerate/csv.hpp"
#include "linerate/errors.hpp"
#include "linerate/manifest.hpp"
#include "linerate/network.hpp"
#include "linerate/opf.hpp"
#include "linerate/sim.hpp"
#include "linerate/thermal.hpp"
#include "linerate/weather.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace linerate;

namespace {

std::string g_command_line;

// --- conductor config ------------------------------------------------------

// Key = value file; '#' starts a comment. Unknown keys are rejected.
thermal::ConductorSpec load_conductor_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("conductor config not found: " + path);
  thermal::ConductorSpec spec = thermal::kepco_acsr480();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t c = line.find('#'); c != std::string::npos) line = line.substr(0, c);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw IoError(path + ":" + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string ctx = path + ":" + std::to_string(line_no);
    if (key == "diameter_mm")
      spec.outside_diameter = csv::parse_double(value, ctx) * 1e-3;
    else if (key == "resistance_ohm_per_km")
      spec.ac_resistance = csv::parse_double(value, ctx) * 1e-3;
    else if (key == "emissivity")
      spec.emissivity = csv::parse_double(value, ctx);
    else if (key == "absorptivity")
      spec.absorptivity = csv::parse_double(value, ctx);
    else if (key == "max_surface_temp_c")
      spec.max_surface_temp = csv::parse_double(value, ctx);
    else if (key == "elevation_m")
      spec.elevation = csv::parse_double(value, ctx);
    else
      throw IoError(ctx + ": unknown conductor key '" + key + "'");
  }
  thermal::validate(spec);
  return spec;
}

struct WeatherFlags {
  std::string time_column = "datetime";
  std::string temp_column = "temperature";
  std::string wind_column;
  std::string time_format = "%Y-%m-%d %H:%M";
  std::string station;

  void attach(CLI::App* cmd) {
    cmd->add_option("--time-column", time_column, "Timestamp column name")
        ->capture_default_str();
    cmd->add_option("--temp-column", temp_column, "Temperature column name")
        ->capture_default_str();
    cmd->add_option("--wind-column", wind_column, "Wind speed column name (optional)");
    cmd->add_option("--time-format", time_format, "strptime-style timestamp format")
        ->capture_default_str();
    cmd->add_option("--station", station, "Station label (default: file stem)");
  }

  weather::CsvSchema schema() const {
    weather::CsvSchema s;
    s.time_column = time_column;
    s.temp_column = temp_column;
    s.wind_column = wind_column;
    s.time_format = time_format;
    s.station = station;
    return s;
  }
};

int infer_weather_year(const weather::WeatherSeries& series) {
  std::set<int> years;
  for (const auto& p : series.points) years.insert(p.time.year);
  if (years.size() != 1)
    throw std::invalid_argument(
        "weather file spans " + std::to_string(years.size()) +
        " years; pass --year to select the simulation year");
  return *years.begin();
}

// --- ampacity ---------------------------------------------------------------

struct AmpacityArgs {
  double temp = 40.0;
  double wind = 0.5;
  double solar = 1000.0;
  double kangle = 1.0;
  std::string conductor_file;
  bool linear_natural = false;
};

void cmd_ampacity(const AmpacityArgs& args) {
  thermal::ConductorSpec spec = args.conductor_file.empty()
                                    ? thermal::kepco_acsr480()
                                    : load_conductor_config(args.conductor_file);
  spec.linear_natural_convection = args.linear_natural;
  thermal::AmbientConditions amb;
  amb.air_temp = args.temp;
  amb.wind_speed = args.wind;
  amb.effective_solar = args.solar;
  amb.wind_direction_factor = args.kangle;
  std::printf("%.3f\n", thermal::ampacity(spec, amb));
}

// --- analyze-weather --------------------------------------------------------

struct AnalyzeArgs {
  std::string weather_file;
  WeatherFlags flags;
  std::string out_dir;
};

void cmd_analyze_weather(const AnalyzeArgs& args) {
  weather::LoadSummary summary;
  const weather::WeatherSeries series =
      weather::load_weather_csv(args.weather_file, args.flags.schema(), &summary);
  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);
  const weather::MonthlyMaxTable table = weather::monthly_maxima(series);
  weather::write_pivot_csv(table, (out / "pivot.csv").string());
  weather::write_analytics_csv(series, (out / "analytics.csv").string());
  const size_t years = weather::annual_maxima(series).size();
  for (int window : {3, 5, 10})
    if (years < static_cast<size_t>(window))
      std::fprintf(stderr, "warning: only %zu year(s); the %d-year mean column is empty\n",
                   years, window);
  std::printf("station:       %s\n", series.station.c_str());
  std::printf("points:        %zu (from %zu rows)\n", summary.points, summary.rows);
  std::printf("missing hours: %zu (longest gap %ld h)\n", summary.missing_hours,
              summary.longest_gap_hours);
  std::printf("months:        %zu\n", table.cells.size());

  RunManifest manifest;
  manifest.command_line = g_command_line;
  manifest.config_hash = fnv1a_hex("");
  manifest.add_input(args.weather_file);
  manifest.add_output((out / "pivot.csv").string());
  manifest.add_output((out / "analytics.csv").string());
  manifest.write((out / "manifest.json").string());
}

// --- derive -----------------------------------------------------------------

struct DeriveArgs {
  std::string weather_file;
  WeatherFlags flags;
  std::string policy = "monthly";
  bool include_incomplete = false;
  std::string out_file;
};

void cmd_derive(const DeriveArgs& args) {
  const weather::WeatherSeries series =
      weather::load_weather_csv(args.weather_file, args.flags.schema(), nullptr);
  const weather::MonthlyMaxTable table = weather::monthly_maxima(series);
  const criteria::TemperatureCriteria monthly =
      criteria::derive_monthly_criteria(table, args.include_incomplete);

  criteria::TemperatureCriteria out = monthly;
  const criteria::Policy policy = criteria::policy_from_name(args.policy);
  if (policy == criteria::Policy::Seasonal)
    out = criteria::blockify(monthly, criteria::seasonal_blocks(), policy);
  else if (policy == criteria::Policy::SemiAnnual)
    out = criteria::blockify(monthly, criteria::semiannual_blocks(), policy);
  else if (policy != criteria::Policy::Monthly)
    throw std::invalid_argument("derive: policy must be monthly, seasonal or semiannual");

  criteria::write_criteria_csv(out, args.out_file);
  std::printf("month  criteria_c  tail_probability\n");
  for (int m = 0; m < 12; ++m) {
    double tail = 0.0;
    try {
      tail = criteria::exceedance_probability(table, m + 1, out.design_temp[m]);
    } catch (const std::invalid_argument&) {
      tail = std::numeric_limits<double>::quiet_NaN();
    }
    std::printf("%5d  %10.2f  %.3e\n", m + 1, out.design_temp[m], tail);
  }

  RunManifest manifest;
  manifest.command_line = g_command_line;
  manifest.config_hash = fnv1a_hex("");
  manifest.add_input(args.weather_file);
  manifest.add_output(args.out_file);
  manifest.write(args.out_file + ".manifest.json");
}

// --- schedule ---------------------------------------------------------------

struct ScheduleArgs {
  std::string case_file;
  std::string conductor_file;
  std::string criteria_file;
  std::string policy;
  std::string weather_file;
  WeatherFlags flags;
  int year = 0;
  std::vector<int> dlr_lines;  // 1-based
  double wind = 0.5;
  double solar = 1000.0;
  std::string out_file;
};

void cmd_schedule(const ScheduleArgs& args) {
  const opf::NetworkCase net = opf::load_matpower_case(args.case_file);
  const thermal::ConductorSpec spec = args.conductor_file.empty()
                                          ? thermal::kepco_acsr480()
                                          : load_conductor_config(args.conductor_file);
  thermal::AmbientConditions amb;
  amb.wind_speed = args.wind;
  amb.effective_solar = args.solar;

  criteria::Policy policy = criteria::Policy::Conventional;
  criteria::TemperatureCriteria crit = criteria::conventional_criteria();
  if (!args.criteria_file.empty()) {
    crit = criteria::load_criteria_csv(args.criteria_file);
    policy = crit.policy;
  }
  if (!args.policy.empty()) {
    const criteria::Policy requested = criteria::policy_from_name(args.policy);
    if (requested == criteria::Policy::Seasonal && policy == criteria::Policy::Monthly)
      crit = criteria::blockify(crit, criteria::seasonal_blocks(), requested);
    else if (requested == criteria::Policy::SemiAnnual &&
             policy == criteria::Policy::Monthly)
      crit = criteria::blockify(crit, criteria::semiannual_blocks(), requested);
    else if (requested != policy && requested != criteria::Policy::Conventional &&
             requested != criteria::Policy::DynamicSubset)
      throw std::invalid_argument("schedule: --policy " + args.policy +
                                  " does not match the criteria file's policy");
    policy = requested;
  }

  std::array<double, kHoursPerYear> temps{};
  std::vector<int> dlr_lines;
  const bool dynamic = policy == criteria::Policy::DynamicSubset;
  if (dynamic) {
    if (args.weather_file.empty() || args.dlr_lines.empty())
      throw std::invalid_argument(
          "schedule: the dlr policy needs --weather and --dlr-lines");
    const weather::WeatherSeries series =
        weather::load_weather_csv(args.weather_file, args.flags.schema(), nullptr);
    const int year = args.year > 0 ? args.year : infer_weather_year(series);
    int feb29 = 0;
    temps = weather::year_hourly_temps(series, year, &feb29);
    if (feb29 > 0)
      std::fprintf(stderr, "warning: dropped %d Feb 29 hours from %s\n", feb29,
                   args.weather_file.c_str());
    for (int l : args.dlr_lines) dlr_lines.push_back(l - 1);
  }

  const criteria::RatingSchedule schedule =
      criteria::build_schedule(net, policy, crit, spec, amb, dynamic ? &temps : nullptr,
                               dynamic ? &dlr_lines : nullptr);
  criteria::write_schedule_csv(schedule, args.out_file);
  if (!schedule.zeroed.empty())
    std::fprintf(stderr, "warning: %zu line-hours zero-rated (no thermal headroom)\n",
                 schedule.zeroed.size());

  RunManifest manifest;
  manifest.command_line = g_command_line;
  manifest.config_hash = fnv1a_hex("");
  manifest.add_input(args.case_file);
  if (!args.criteria_file.empty()) manifest.add_input(args.criteria_file);
  if (!args.weather_file.empty()) manifest.add_input(args.weather_file);
  manifest.add_output(args.out_file);
  manifest.write(args.out_file + ".manifest.json");
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string case_file;
  std::string conductor_file;
  std::string criteria_file;
  std::string history_file;
  std::string weather_file;
  WeatherFlags flags;
  int year = 0;
  std::string demand_file;
  std::vector<std::string> policies = {"conventional", "monthly", "seasonal",
                                       "semiannual", "dlr"};
  std::string out_dir;
  double voll = 9000.0;
  double dlr_fraction = 0.10;
  int pwl_segments = 10;
  double wind = 0.5;
  double solar = 1000.0;
  unsigned long long seed = 7;
  int jobs = 0;
  bool no_checkpoints = false;
  std::string config_file;  // consumed by CLI11 itself
};

// key = value defaults for simulate; values given on the command line win.
void apply_simulate_config(const CLI::App* cmd, SimulateArgs* args) {
  std::ifstream in(args->config_file);
  if (!in) throw IoError("config file not found: " + args->config_file);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t c = line.find('#'); c != std::string::npos) line = line.substr(0, c);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw IoError(args->config_file + ":" + std::to_string(line_no) +
                      ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string ctx = args->config_file + ":" + std::to_string(line_no);
    const auto overridden = [&](const std::string& flag) {
      return cmd->count("--" + flag) > 0;
    };
    if (key == "case") {
      if (!overridden(key)) args->case_file = value;
    } else if (key == "conductor") {
      if (!overridden(key)) args->conductor_file = value;
    } else if (key == "criteria") {
      if (!overridden(key)) args->criteria_file = value;
    } else if (key == "history") {
      if (!overridden(key)) args->history_file = value;
    } else if (key == "weather") {
      if (!overridden(key)) args->weather_file = value;
    } else if (key == "demand") {
      if (!overridden(key)) args->demand_file = value;
    } else if (key == "out") {
      if (!overridden(key)) args->out_dir = value;
    } else if (key == "policies") {
      if (!overridden(key)) args->policies = csv::split_line(value, ',');
    } else if (key == "year") {
      if (!overridden(key)) args->year = static_cast<int>(csv::parse_long(value, ctx));
    } else if (key == "voll") {
      if (!overridden(key)) args->voll = csv::parse_double(value, ctx);
    } else if (key == "dlr-fraction") {
      if (!overridden(key)) args->dlr_fraction = csv::parse_double(value, ctx);
    } else if (key == "pwl-segments") {
      if (!overridden(key))
        args->pwl_segments = static_cast<int>(csv::parse_long(value, ctx));
    } else if (key == "wind") {
      if (!overridden(key)) args->wind = csv::parse_double(value, ctx);
    } else if (key == "solar") {
      if (!overridden(key)) args->solar = csv::parse_double(value, ctx);
    } else if (key == "seed") {
      if (!overridden(key))
        args->seed = static_cast<unsigned long long>(csv::parse_long(value, ctx));
    } else if (key == "jobs") {
      if (!overridden(key)) args->jobs = static_cast<int>(csv::parse_long(value, ctx));
    } else {
      throw IoError(ctx + ": unknown config key '" + key + "'");
    }
  }
}

void cmd_simulate(const SimulateArgs& args) {
  if (args.case_file.empty())
    throw IoError("simulate: --case is required (flag or config file)");
  if (args.out_dir.empty())
    throw IoError("simulate: --out is required (flag or config file)");
  sim::YearRunConfig config;
  config.network = opf::load_matpower_case(args.case_file);
  config.conductor = args.conductor_file.empty()
                         ? thermal::kepco_acsr480()
                         : load_conductor_config(args.conductor_file);
  config.policy_ambient.wind_speed = args.wind;
  config.policy_ambient.effective_solar = args.solar;
  config.voll = args.voll;
  config.dlr_fraction = args.dlr_fraction;
  config.pwl_segments = args.pwl_segments;
  config.jobs = args.jobs > 0 ? args.jobs
                              : static_cast<int>(std::thread::hardware_concurrency());

  std::vector<criteria::Policy> policies;
  for (const auto& name : args.policies) {
    const criteria::Policy p = criteria::policy_from_name(name);
    if (std::find(policies.begin(), policies.end(), p) == policies.end())
      policies.push_back(p);
  }
  // The conventional run is the normalization reference and the DLR baseline.
  if (std::find(policies.begin(), policies.end(), criteria::Policy::Conventional) ==
      policies.end())
    policies.insert(policies.begin(), criteria::Policy::Conventional);
  std::stable_partition(policies.begin(), policies.end(), [](criteria::Policy p) {
    return p == criteria::Policy::Conventional;
  });
  std::stable_partition(policies.begin(), policies.end(), [](criteria::Policy p) {
    return p != criteria::Policy::DynamicSubset;
  });

  const bool needs_criteria =
      std::any_of(policies.begin(), policies.end(), [](criteria::Policy p) {
        return p == criteria::Policy::Monthly || p == criteria::Policy::Seasonal ||
               p == criteria::Policy::SemiAnnual;
      });
  const bool needs_weather =
      std::find(policies.begin(), policies.end(), criteria::Policy::DynamicSubset) !=
      policies.end();

  if (!args.criteria_file.empty()) {
    config.monthly_criteria = criteria::load_criteria_csv(args.criteria_file);
    if (config.monthly_criteria.policy != criteria::Policy::Monthly)
      throw std::invalid_argument("simulate: --criteria must hold monthly criteria");
  } else if (!args.history_file.empty()) {
    const weather::WeatherSeries history =
        weather::load_weather_csv(args.history_file, args.flags.schema(), nullptr);
    config.monthly_criteria =
        criteria::derive_monthly_criteria(weather::monthly_maxima(history));
  } else if (needs_criteria) {
    throw std::invalid_argument(
        "simulate: monthly/seasonal/semiannual policies need --criteria or --history");
  } else {
    config.monthly_criteria = criteria::conventional_criteria();
    config.monthly_criteria.policy = criteria::Policy::Monthly;
  }

  std::string weather_hash = "none";
  if (!args.weather_file.empty()) {
    const weather::WeatherSeries series =
        weather::load_weather_csv(args.weather_file, args.flags.schema(), nullptr);
    const int year = args.year > 0 ? args.year : infer_weather_year(series);
    int feb29 = 0;
    config.year_temps = weather::year_hourly_temps(series, year, &feb29);
    if (feb29 > 0)
      std::fprintf(stderr, "warning: dropped %d Feb 29 hours from %s\n", feb29,
                   args.weather_file.c_str());
    config.has_year_temps = true;
    weather_hash = hash_file(args.weather_file) + "/" + std::to_string(year);
  } else if (needs_weather) {
    throw std::invalid_argument("simulate: the dlr policy needs --weather");
  }

  bool synthetic_demand = false;
  if (!args.demand_file.empty()) {
    config.demand_ratio = sim::load_demand_csv(args.demand_file);
  } else {
    sim::DemandProfileParams params;
    params.seed = args.seed;
    config.demand_ratio = sim::synthetic_demand_profile(params);
    synthetic_demand = true;
  }

  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);
  if (!args.no_checkpoints) config.checkpoint_dir = (out / "days").string();

  // Effective-config fingerprint; guards checkpoint reuse across reruns.
  {
    std::ostringstream key;
    key << hash_file(args.case_file) << '|' << weather_hash << '|';
    key << config.conductor.outside_diameter << ',' << config.conductor.ac_resistance
        << ',' << config.conductor.emissivity << ',' << config.conductor.absorptivity
        << ',' << config.conductor.max_surface_temp << ',' << config.conductor.elevation
        << '|' << config.policy_ambient.wind_speed << ','
        << config.policy_ambient.effective_solar << '|';
    for (double t : config.monthly_criteria.design_temp) key << t << ',';
    key << '|' << config.voll << ',' << config.dlr_fraction << ','
        << config.pwl_segments << '|';
    key.precision(17);
    for (int h = 0; h < kHoursPerYear; ++h) key << config.demand_ratio[h] << ';';
    config.config_hash = fnv1a_hex(key.str());
  }

  std::vector<sim::YearRunResult> results;
  results.reserve(policies.size());
  int baseline_index = -1;
  for (criteria::Policy policy : policies) {
    std::fprintf(stderr, "running %s ...\n", criteria::policy_name(policy));
    results.push_back(sim::run_year(
        config, policy, baseline_index >= 0 ? &results[baseline_index] : nullptr));
    if (policy == criteria::Policy::Conventional)
      baseline_index = static_cast<int>(results.size()) - 1;
    std::fprintf(stderr, "  annual cost $%.2f, max residual %.2e\n",
                 results.back().annual_cost,
                 std::max(results.back().max_balance_residual,
                          results.back().max_flow_residual));
    if (policy == criteria::Policy::DynamicSubset) {
      std::string lines;
      for (int l : results.back().dlr_lines) lines += std::to_string(l + 1) + " ";
      std::fprintf(stderr, "  hourly-rated lines: %s\n", lines.c_str());
    }
  }

  const sim::CostReport report = sim::compare_policies(results);
  sim::emit_reports(report, args.out_dir);
  if (synthetic_demand)
    sim::write_demand_csv(config.demand_ratio, (out / "demand_used.csv").string());

  RunManifest manifest;
  manifest.command_line = g_command_line;
  manifest.config_hash = config.config_hash;
  manifest.add_input(args.case_file);
  if (!args.criteria_file.empty()) manifest.add_input(args.criteria_file);
  if (!args.history_file.empty()) manifest.add_input(args.history_file);
  if (!args.weather_file.empty()) manifest.add_input(args.weather_file);
  if (!args.demand_file.empty()) manifest.add_input(args.demand_file);
  if (!args.config_file.empty()) manifest.add_input(args.config_file);
  for (const char* name : {"monthly_costs.csv", "normalized.csv", "annual.csv",
                           "shed.csv", "monthly_costs.svg", "annual.svg"})
    manifest.add_output((out / name).string());
  if (synthetic_demand) manifest.add_output((out / "demand_used.csv").string());
  manifest.write((out / "manifest.json").string());

  std::printf("policy        annual_cost\n");
  for (size_t p = 0; p < report.policies.size(); ++p)
    std::printf("%-12s  %.2f\n", criteria::policy_name(report.policies[p]),
                report.annual_cost[static_cast<int>(p)]);
}

// --- report -----------------------------------------------------------------

struct ReportArgs {
  std::string from_dir;
  std::string out_dir;
};

void cmd_report(const ReportArgs& args) {
  const std::string days = (fs::path(args.from_dir) / "days").string();
  const auto results = sim::load_checkpoints(days, -1);
  const sim::CostReport report = sim::compare_policies(results);
  sim::emit_reports(report, args.out_dir);

  RunManifest manifest;
  manifest.command_line = g_command_line;
  manifest.config_hash = results.front().config_hash;
  for (const auto& r : results)
    manifest.add_input(
        (fs::path(days) / criteria::policy_name(r.policy) / "policy.json").string());
  const fs::path out(args.out_dir);
  for (const char* name : {"monthly_costs.csv", "normalized.csv", "annual.csv",
                           "shed.csv", "monthly_costs.svg", "annual.svg"})
    manifest.add_output((out / name).string());
  manifest.write((out / "manifest.json").string());
  std::printf("report written to %s\n", args.out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    g_command_line = cmd.str();
  }

  CLI::App app{"Transmission line rating and dispatch-cost toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto ampacity_args = std::make_shared<AmpacityArgs>();
  auto* ampacity_cmd =
      app.add_subcommand("ampacity", "Allowable current for one weather point");
  ampacity_cmd->add_option("--temp", ampacity_args->temp, "Air temperature, degC")
      ->required();
  ampacity_cmd->add_option("--wind", ampacity_args->wind, "Wind speed, m/s")
      ->capture_default_str();
  ampacity_cmd->add_option("--solar", ampacity_args->solar, "Effective solar, W/m^2")
      ->capture_default_str();
  ampacity_cmd->add_option("--kangle", ampacity_args->kangle, "Wind direction factor")
      ->capture_default_str();
  ampacity_cmd->add_option("--conductor", ampacity_args->conductor_file,
                           "Conductor config file")
      ->check(CLI::ExistingFile);
  ampacity_cmd->add_flag("--linear-natural-convection", ampacity_args->linear_natural,
                         "Linear temperature-difference form of the zero-wind term");
  ampacity_cmd->callback([ampacity_args] { cmd_ampacity(*ampacity_args); });

  auto analyze_args = std::make_shared<AnalyzeArgs>();
  auto* analyze_cmd =
      app.add_subcommand("analyze-weather", "Monthly maxima pivot and trend analytics");
  analyze_cmd->add_option("--weather", analyze_args->weather_file, "Hourly weather CSV")
      ->required()
      ->check(CLI::ExistingFile);
  analyze_args->flags.attach(analyze_cmd);
  analyze_cmd->add_option("--out", analyze_args->out_dir, "Output directory")->required();
  analyze_cmd->callback([analyze_args] { cmd_analyze_weather(*analyze_args); });

  auto derive_args = std::make_shared<DeriveArgs>();
  auto* derive_cmd =
      app.add_subcommand("derive", "Temperature criteria from historical maxima");
  derive_cmd->add_option("--weather", derive_args->weather_file, "Hourly weather CSV")
      ->required()
      ->check(CLI::ExistingFile);
  derive_args->flags.attach(derive_cmd);
  derive_cmd->add_option("--policy", derive_args->policy, "monthly|seasonal|semiannual")
      ->capture_default_str();
  derive_cmd->add_flag("--include-incomplete-months", derive_args->include_incomplete,
                       "Use months with missing hours as well");
  derive_cmd->add_option("--out", derive_args->out_file, "Criteria CSV path")->required();
  derive_cmd->callback([derive_args] { cmd_derive(*derive_args); });

  auto schedule_args = std::make_shared<ScheduleArgs>();
  auto* schedule_cmd =
      app.add_subcommand("schedule", "Per-line hourly limit schedule CSV");
  schedule_cmd->add_option("--case", schedule_args->case_file, "MATPOWER-style case file")
      ->required()
      ->check(CLI::ExistingFile);
  schedule_cmd->add_option("--conductor", schedule_args->conductor_file,
                           "Conductor config file")
      ->check(CLI::ExistingFile);
  schedule_cmd->add_option("--criteria", schedule_args->criteria_file, "Criteria CSV")
      ->check(CLI::ExistingFile);
  schedule_cmd->add_option("--policy", schedule_args->policy,
                           "conventional|monthly|seasonal|semiannual|dlr");
  schedule_cmd->add_option("--weather", schedule_args->weather_file,
                           "Hourly weather CSV (dlr only)")
      ->check(CLI::ExistingFile);
  schedule_args->flags.attach(schedule_cmd);
  schedule_cmd->add_option("--year", schedule_args->year, "Simulation year");
  schedule_cmd->add_option("--dlr-lines", schedule_args->dlr_lines,
                           "1-based line numbers rated hourly");
  schedule_cmd->add_option("--wind", schedule_args->wind, "Rating wind speed, m/s")
      ->capture_default_str();
  schedule_cmd->add_option("--solar", schedule_args->solar, "Rating solar, W/m^2")
      ->capture_default_str();
  schedule_cmd->add_option("--out", schedule_args->out_file, "Schedule CSV path")
      ->required();
  schedule_cmd->callback([schedule_args] { cmd_schedule(*schedule_args); });

  auto simulate_args = std::make_shared<SimulateArgs>();
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Year-long dispatch cost comparison");
  simulate_cmd->add_option("--config", simulate_args->config_file,
                           "Key=value config file; command-line flags override it")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--case", simulate_args->case_file, "MATPOWER-style case file")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--conductor", simulate_args->conductor_file,
                           "Conductor config file")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--criteria", simulate_args->criteria_file,
                           "Monthly criteria CSV")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--history", simulate_args->history_file,
                           "Multi-year weather CSV to derive criteria from")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--weather", simulate_args->weather_file,
                           "Simulation-year weather CSV (dlr)")
      ->check(CLI::ExistingFile);
  simulate_args->flags.attach(simulate_cmd);
  simulate_cmd->add_option("--year", simulate_args->year, "Simulation year");
  simulate_cmd->add_option("--demand", simulate_args->demand_file,
                           "Hourly demand-ratio CSV (hour,ratio)")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--policies", simulate_args->policies,
                           "Policies to run (conventional always included)")
      ->delimiter(',')
      ->capture_default_str();
  simulate_cmd->add_option("--out", simulate_args->out_dir, "Output directory");
  simulate_cmd->add_option("--voll", simulate_args->voll, "Value of lost load, $/MWh")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--dlr-fraction", simulate_args->dlr_fraction,
                   "Fraction of lines rated hourly")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--pwl-segments", simulate_args->pwl_segments,
                   "Cost linearization segments")
      ->capture_default_str();
  simulate_cmd->add_option("--wind", simulate_args->wind, "Rating wind speed, m/s")
      ->capture_default_str();
  simulate_cmd->add_option("--solar", simulate_args->solar, "Rating solar, W/m^2")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_args->seed, "Synthetic demand seed")
      ->capture_default_str();
  simulate_cmd->add_option("--jobs", simulate_args->jobs,
                           "Worker threads (0 = hardware)");
  simulate_cmd->add_flag("--no-checkpoints", simulate_args->no_checkpoints,
                         "Do not persist per-day results");
  simulate_cmd->callback([simulate_args, simulate_cmd] {
    if (!simulate_args->config_file.empty())
      apply_simulate_config(simulate_cmd, simulate_args.get());
    cmd_simulate(*simulate_args);
  });

  auto report_args = std::make_shared<ReportArgs>();
  auto* report_cmd =
      app.add_subcommand("report", "Re-aggregate a simulation's per-day results");
  report_cmd->add_option("--from", report_args->from_dir, "simulate --out directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  report_cmd->add_option("--out", report_args->out_dir, "Output directory")->required();
  report_cmd->callback([report_args] { cmd_report(*report_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
