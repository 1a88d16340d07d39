#include "linerate/sim.hpp"

#include "linerate/csv.hpp"
#include "linerate/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace linerate::sim {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

Vector synthetic_demand_profile(const DemandProfileParams& params) {
  Vector ratios(kHoursPerYear);
  std::mt19937_64 rng(params.seed);
  auto uniform = [&rng]() {
    // 53-bit mantissa draw; identical sequence on every platform.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int h = 0; h < kHoursPerYear; ++h) {
    const int hour_of_day = h % 24;
    const int day_of_year = h / 24;
    const int weekday = (day_of_year + params.first_weekday) % 7;
    const double daily =
        1.0 + params.daily_amplitude *
                  std::cos(two_pi * (hour_of_day - params.daily_peak_hour) / 24.0);
    const double seasonal =
        1.0 +
        params.winter_amplitude * std::cos(two_pi * (day_of_year - 14) / 365.0) +
        params.summer_amplitude * std::cos(two_pi * (day_of_year - 195) / 365.0);
    const double week = (weekday == 0 || weekday == 6) ? params.weekend_factor : 1.0;
    const double noise = 1.0 + params.noise * (2.0 * uniform() - 1.0);
    ratios[h] = std::max(0.0, params.base * daily * seasonal * week * noise);
  }
  return ratios;
}

Vector load_demand_csv(const std::string& path) {
  const csv::Table table = csv::read_csv(path);
  const int hour_col = table.column("hour");
  const int ratio_col = table.column("ratio");
  if (hour_col < 0 || ratio_col < 0)
    throw IoError(path + ": expected header hour,ratio");
  if (table.rows.size() != kHoursPerYear)
    throw IoError(path + ": expected " + std::to_string(kHoursPerYear) +
                  " rows, found " + std::to_string(table.rows.size()));
  Vector ratios(kHoursPerYear);
  std::vector<bool> seen(kHoursPerYear, false);
  for (const auto& row : table.rows) {
    const long h = csv::parse_long(row[hour_col], path);
    if (h < 0 || h >= kHoursPerYear)
      throw IoError(path + ": hour " + std::to_string(h) + " out of range");
    if (seen[h]) throw IoError(path + ": duplicate hour " + std::to_string(h));
    seen[h] = true;
    const double r = csv::parse_double(row[ratio_col], path);
    if (r < 0) throw IoError(path + ": negative demand ratio at hour " + std::to_string(h));
    ratios[h] = r;
  }
  return ratios;
}

void write_demand_csv(const Vector& ratios, const std::string& path) {
  if (ratios.size() != kHoursPerYear)
    throw std::invalid_argument("demand profile must cover 8760 hours");
  std::vector<std::string> lines;
  lines.reserve(kHoursPerYear + 1);
  lines.push_back("hour,ratio");
  for (int h = 0; h < kHoursPerYear; ++h)
    lines.push_back(std::to_string(h) + "," + csv::format_full(ratios[h]));
  csv::write_lines(path, lines);
}

criteria::TemperatureCriteria criteria_for_policy(const YearRunConfig& config,
                                                  criteria::Policy policy) {
  switch (policy) {
    case criteria::Policy::Conventional:
    case criteria::Policy::DynamicSubset:
      return criteria::conventional_criteria();
    case criteria::Policy::Monthly:
      return config.monthly_criteria;
    case criteria::Policy::Seasonal:
      return criteria::blockify(config.monthly_criteria, criteria::seasonal_blocks(),
                                criteria::Policy::Seasonal);
    case criteria::Policy::SemiAnnual:
      return criteria::blockify(config.monthly_criteria, criteria::semiannual_blocks(),
                                criteria::Policy::SemiAnnual);
  }
  throw std::invalid_argument("unknown policy");
}

namespace {

struct DaySummary {
  double cost = 0.0;
  double shed_mwh = 0.0;
  std::vector<long> line_binding;
  std::vector<double> line_abs_flow;
  double max_balance_residual = 0.0;
  double max_flow_residual = 0.0;
};

bool is_binding(double flow_mw, double limit_mw) {
  return limit_mw - std::abs(flow_mw) <= kBindingRelTol * std::max(1.0, limit_mw);
}

DaySummary summarize_day(const opf::DayResult& day, const Matrix& limits, int first_hour) {
  DaySummary s;
  const int lines = static_cast<int>(day.hours.front().flow_mw.size());
  s.line_binding.assign(lines, 0);
  s.line_abs_flow.assign(lines, 0.0);
  s.cost = day.cost;
  for (int h = 0; h < 24; ++h) {
    const opf::HourlyDispatch& hour = day.hours[h];
    s.shed_mwh += hour.shed_mw.sum();
    s.max_balance_residual = std::max(s.max_balance_residual, hour.balance_residual);
    s.max_flow_residual = std::max(s.max_flow_residual, hour.flow_residual);
    for (int l = 0; l < lines; ++l) {
      s.line_abs_flow[l] += std::abs(hour.flow_mw[l]);
      if (is_binding(hour.flow_mw[l], limits(l, first_hour + h))) ++s.line_binding[l];
    }
  }
  return s;
}

std::string day_file_name(int day) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "day_%03d.json", day);
  return buf;
}

void write_day_file(const fs::path& path, const DaySummary& s, int day,
                    criteria::Policy policy, const std::string& config_hash) {
  ordered_json j;
  j["day"] = day;
  j["policy"] = criteria::policy_name(policy);
  j["config_hash"] = config_hash;
  j["cost"] = s.cost;
  j["shed_mwh"] = s.shed_mwh;
  j["line_binding_hours"] = s.line_binding;
  j["line_abs_flow_mw"] = s.line_abs_flow;
  j["max_balance_residual"] = s.max_balance_residual;
  j["max_flow_residual"] = s.max_flow_residual;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write day file: " + path.string());
  out << j.dump(1) << '\n';
}

bool read_day_file(const fs::path& path, const std::string& config_hash, int num_lines,
                   DaySummary* out) {
  if (!fs::exists(path)) return false;
  std::ifstream in(path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error&) {
    return false;  // partial write from an interrupted run; recompute
  }
  if (!config_hash.empty() && j.value("config_hash", "") != config_hash) return false;
  DaySummary s;
  s.cost = j.at("cost").get<double>();
  s.shed_mwh = j.at("shed_mwh").get<double>();
  s.line_binding = j.at("line_binding_hours").get<std::vector<long>>();
  s.line_abs_flow = j.at("line_abs_flow_mw").get<std::vector<double>>();
  s.max_balance_residual = j.at("max_balance_residual").get<double>();
  s.max_flow_residual = j.at("max_flow_residual").get<double>();
  // num_lines < 0 = caller infers the line count from the file itself
  if (num_lines >= 0 && static_cast<int>(s.line_binding.size()) != num_lines)
    return false;
  *out = s;
  return true;
}

YearRunResult aggregate_year(criteria::Policy policy,
                             const std::vector<DaySummary>& days, int num_lines,
                             const std::string& config_hash) {
  YearRunResult r;
  r.policy = policy;
  r.config_hash = config_hash;
  r.line_binding_hours.assign(num_lines, 0);
  r.line_abs_flow_mw = Vector::Zero(num_lines);
  r.day_cost.resize(days.size());
  for (size_t d = 0; d < days.size(); ++d) {
    const DaySummary& s = days[d];
    const int month = month_of_hour(static_cast<int>(d) * 24) - 1;
    r.day_cost[d] = s.cost;
    r.monthly_cost[month] += s.cost;
    r.monthly_shed_mwh[month] += s.shed_mwh;
    for (int l = 0; l < num_lines; ++l) {
      r.monthly_binding_hours[month] += s.line_binding[l];
      r.line_binding_hours[l] += s.line_binding[l];
      r.line_abs_flow_mw[l] += s.line_abs_flow[l];
    }
    r.max_balance_residual = std::max(r.max_balance_residual, s.max_balance_residual);
    r.max_flow_residual = std::max(r.max_flow_residual, s.max_flow_residual);
  }
  for (int m = 0; m < 12; ++m) r.annual_cost += r.monthly_cost[m];
  return r;
}

}  // namespace

YearRunResult run_year(const YearRunConfig& config, criteria::Policy policy,
                       const YearRunResult* conventional_baseline) {
  opf::validate(config.network);
  if (config.demand_ratio.size() != kHoursPerYear)
    throw std::invalid_argument("run_year: demand profile must cover 8760 hours");

  std::vector<int> dlr_lines;
  if (policy == criteria::Policy::DynamicSubset) {
    if (!conventional_baseline ||
        conventional_baseline->policy != criteria::Policy::Conventional)
      throw std::invalid_argument(
          "run_year: the dlr policy needs the conventional baseline result");
    if (!config.config_hash.empty() &&
        conventional_baseline->config_hash != config.config_hash)
      throw std::invalid_argument("run_year: baseline was produced by another config");
    if (!config.has_year_temps)
      throw std::invalid_argument("run_year: the dlr policy needs hourly weather");
    dlr_lines = criteria::select_dlr_lines(
        static_cast<int>(config.network.lines.size()),
        conventional_baseline->line_binding_hours,
        conventional_baseline->line_abs_flow_mw, config.dlr_fraction);
  }

  const criteria::TemperatureCriteria crit = criteria_for_policy(config, policy);
  const criteria::RatingSchedule schedule = criteria::build_schedule(
      config.network, policy, crit, config.conductor, config.policy_ambient,
      config.has_year_temps ? &config.year_temps : nullptr,
      dlr_lines.empty() ? nullptr : &dlr_lines);

  const int num_buses = static_cast<int>(config.network.buses.size());
  const int num_lines = static_cast<int>(config.network.lines.size());
  constexpr int kDays = kHoursPerYear / 24;

  opf::DispatchOptions dispatch;
  dispatch.voll = config.voll;
  dispatch.pwl_segments = config.pwl_segments;

  Vector base_load(num_buses);
  for (int i = 0; i < num_buses; ++i) base_load[i] = config.network.buses[i].base_load_mw;

  fs::path policy_dir;
  if (!config.checkpoint_dir.empty()) {
    policy_dir = fs::path(config.checkpoint_dir) / criteria::policy_name(policy);
    fs::create_directories(policy_dir);
  }

  std::vector<DaySummary> days(kDays);
  std::vector<char> done(kDays, 0);
  if (!policy_dir.empty()) {
    for (int d = 0; d < kDays; ++d)
      done[d] = read_day_file(policy_dir / day_file_name(d), config.config_hash,
                              num_lines, &days[d]);
  }

  auto solve_one = [&](int d) {
    opf::DayProblem problem;
    problem.demand_mw.resize(num_buses, 24);
    problem.limits_mw.resize(num_lines, 24);
    const int first_hour = d * 24;
    for (int h = 0; h < 24; ++h) {
      problem.demand_mw.col(h) = base_load * config.demand_ratio[first_hour + h];
      problem.limits_mw.col(h) = schedule.limits_mw.col(first_hour + h);
    }
    opf::DayResult result;
    try {
      result = opf::solve_day(config.network, problem, dispatch);
    } catch (const SolveError& e) {
      throw SolveError("day " + std::to_string(d) + ", " +
                       std::string(criteria::policy_name(policy)) + ": " + e.what());
    }
    days[d] = summarize_day(result, schedule.limits_mw, first_hour);
    if (!policy_dir.empty())
      write_day_file(policy_dir / day_file_name(d), days[d], d, policy,
                     config.config_hash);
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (int d = 0; d < kDays; ++d)
      if (!done[d]) solve_one(d);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      while (true) {
        const int d = next.fetch_add(1);
        if (d >= kDays) return;
        if (done[d]) continue;
        try {
          solve_one(d);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  YearRunResult result = aggregate_year(policy, days, num_lines, config.config_hash);
  result.dlr_lines = dlr_lines;

  if (!policy_dir.empty()) {
    ordered_json meta;
    meta["policy"] = criteria::policy_name(policy);
    meta["config_hash"] = config.config_hash;
    meta["dlr_lines"] = dlr_lines;
    std::ofstream out(policy_dir / "policy.json", std::ios::binary);
    out << meta.dump(1) << '\n';
  }
  return result;
}

CostReport compare_policies(const std::vector<YearRunResult>& results) {
  if (results.empty()) throw std::invalid_argument("compare_policies: no results");
  int conventional = -1;
  for (size_t p = 0; p < results.size(); ++p) {
    if (results[p].config_hash != results[0].config_hash)
      throw std::invalid_argument("compare_policies: results come from different configs");
    if (results[p].policy == criteria::Policy::Conventional)
      conventional = static_cast<int>(p);
  }
  if (conventional < 0)
    throw std::invalid_argument(
        "compare_policies: a conventional run is required for normalization");

  const int num_policies = static_cast<int>(results.size());
  CostReport report;
  report.monthly_cost.resize(12, num_policies);
  report.annual_cost.resize(num_policies);
  report.normalized.resize(12, num_policies);
  report.shed_mwh.resize(12, num_policies);
  report.binding_hours.resize(12, num_policies);
  for (int p = 0; p < num_policies; ++p) {
    report.policies.push_back(results[p].policy);
    report.annual_cost[p] = results[p].annual_cost;
    for (int m = 0; m < 12; ++m) {
      report.monthly_cost(m, p) = results[p].monthly_cost[m];
      report.shed_mwh(m, p) = results[p].monthly_shed_mwh[m];
      report.binding_hours(m, p) = static_cast<double>(results[p].monthly_binding_hours[m]);
    }
  }
  for (int m = 0; m < 12; ++m) {
    const double reference = report.monthly_cost(m, conventional);
    if (!(reference > 0))
      throw std::invalid_argument("compare_policies: conventional cost in month " +
                                  std::to_string(m + 1) +
                                  " is not positive; normalization undefined");
    for (int p = 0; p < num_policies; ++p)
      report.normalized(m, p) = 100.0 * report.monthly_cost(m, p) / reference;
  }
  return report;
}

namespace {

std::string join_policy_header(const CostReport& report, const std::string& prefix) {
  std::string header;
  for (auto p : report.policies)
    header += "," + (prefix.empty() ? "" : prefix + "_") + criteria::policy_name(p);
  return header;
}

void write_matrix_csv(const std::string& path, const CostReport& report,
                      const Matrix& values) {
  std::vector<std::string> lines;
  lines.push_back("month" + join_policy_header(report, ""));
  for (int m = 0; m < 12; ++m) {
    std::string line = std::to_string(m + 1);
    for (int p = 0; p < values.cols(); ++p) line += "," + csv::format_full(values(m, p));
    lines.push_back(line);
  }
  csv::write_lines(path, lines);
}

Matrix read_matrix_csv(const std::string& path, std::vector<std::string>* names) {
  const csv::Table table = csv::read_csv(path);
  if (table.rows.size() != 12) throw IoError(path + ": expected 12 month rows");
  const int cols = static_cast<int>(table.header.size()) - 1;
  if (cols < 1) throw IoError(path + ": no policy columns");
  Matrix values(12, cols);
  for (int m = 0; m < 12; ++m)
    for (int p = 0; p < cols; ++p)
      values(m, p) = csv::parse_double(table.rows[m][p + 1], path);
  if (names) names->assign(table.header.begin() + 1, table.header.end());
  return values;
}

const char* kSvgPalette[5] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#aa3377"};

void write_monthly_svg(const CostReport& report, const std::string& path) {
  const int width = 640, height = 400, pad = 50;
  double max_cost = 0;
  for (int m = 0; m < 12; ++m)
    for (int p = 0; p < report.monthly_cost.cols(); ++p)
      max_cost = std::max(max_cost, report.monthly_cost(m, p));
  if (max_cost <= 0) max_cost = 1;
  std::vector<std::string> s;
  s.push_back("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">");
  s.push_back("<rect width=\"640\" height=\"400\" fill=\"white\"/>");
  s.push_back("<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
              "Monthly operating cost ($)</text>");
  auto xpos = [&](int m) { return pad + m * (width - 2 * pad) / 11.0; };
  auto ypos = [&](double v) { return height - pad - v / max_cost * (height - 2 * pad); };
  for (int m = 0; m < 12; ++m) {
    s.push_back("<text x=\"" + csv::format_fixed(xpos(m), 1) + "\" y=\"" +
                std::to_string(height - pad + 16) +
                "\" text-anchor=\"middle\" font-size=\"10\">" + std::to_string(m + 1) +
                "</text>");
  }
  s.push_back("<line x1=\"" + std::to_string(pad) + "\" y1=\"" +
              std::to_string(height - pad) + "\" x2=\"" + std::to_string(width - pad) +
              "\" y2=\"" + std::to_string(height - pad) + "\" stroke=\"black\"/>");
  s.push_back("<line x1=\"" + std::to_string(pad) + "\" y1=\"" + std::to_string(pad) +
              "\" x2=\"" + std::to_string(pad) + "\" y2=\"" +
              std::to_string(height - pad) + "\" stroke=\"black\"/>");
  for (int p = 0; p < report.monthly_cost.cols(); ++p) {
    std::string points;
    for (int m = 0; m < 12; ++m)
      points += csv::format_fixed(xpos(m), 1) + "," +
                csv::format_fixed(ypos(report.monthly_cost(m, p)), 1) + " ";
    s.push_back("<polyline fill=\"none\" stroke=\"" + std::string(kSvgPalette[p % 5]) +
                "\" stroke-width=\"2\" points=\"" + points + "\"/>");
    s.push_back("<text x=\"" + std::to_string(width - pad + 4) + "\" y=\"" +
                csv::format_fixed(ypos(report.monthly_cost(11, p)), 1) +
                "\" font-size=\"10\" fill=\"" + kSvgPalette[p % 5] + "\">" +
                criteria::policy_name(report.policies[p]) + "</text>");
  }
  s.push_back("</svg>");
  csv::write_lines(path, s);
}

void write_annual_svg(const CostReport& report, const std::string& path) {
  const int width = 640, height = 400, pad = 50;
  const int num = static_cast<int>(report.policies.size());
  double max_cost = report.annual_cost.maxCoeff();
  if (max_cost <= 0) max_cost = 1;
  std::vector<std::string> s;
  s.push_back("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">");
  s.push_back("<rect width=\"640\" height=\"400\" fill=\"white\"/>");
  s.push_back("<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
              "Annual operating cost ($)</text>");
  const double slot = static_cast<double>(width - 2 * pad) / num;
  for (int p = 0; p < num; ++p) {
    const double bar_height = report.annual_cost[p] / max_cost * (height - 2 * pad);
    const double x = pad + p * slot + slot * 0.15;
    const double y = height - pad - bar_height;
    s.push_back("<rect x=\"" + csv::format_fixed(x, 1) + "\" y=\"" +
                csv::format_fixed(y, 1) + "\" width=\"" +
                csv::format_fixed(slot * 0.7, 1) + "\" height=\"" +
                csv::format_fixed(bar_height, 1) + "\" fill=\"" + kSvgPalette[p % 5] +
                "\"/>");
    s.push_back("<text x=\"" + csv::format_fixed(x + slot * 0.35, 1) + "\" y=\"" +
                std::to_string(height - pad + 16) +
                "\" text-anchor=\"middle\" font-size=\"10\">" +
                criteria::policy_name(report.policies[p]) + "</text>");
    s.push_back("<text x=\"" + csv::format_fixed(x + slot * 0.35, 1) + "\" y=\"" +
                csv::format_fixed(y - 4, 1) +
                "\" text-anchor=\"middle\" font-size=\"10\">" +
                csv::format_fixed(report.annual_cost[p], 0) + "</text>");
  }
  s.push_back("</svg>");
  csv::write_lines(path, s);
}

}  // namespace

void emit_reports(const CostReport& report, const std::string& out_dir) {
  if (report.policies.empty()) throw std::invalid_argument("emit_reports: empty report");
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_matrix_csv((dir / "monthly_costs.csv").string(), report, report.monthly_cost);
  write_matrix_csv((dir / "normalized.csv").string(), report, report.normalized);
  {
    std::vector<std::string> lines;
    lines.push_back("policy,annual_cost");
    for (size_t p = 0; p < report.policies.size(); ++p)
      lines.push_back(std::string(criteria::policy_name(report.policies[p])) + "," +
                      csv::format_full(report.annual_cost[static_cast<int>(p)]));
    csv::write_lines((dir / "annual.csv").string(), lines);
  }
  {
    std::vector<std::string> lines;
    lines.push_back("month" + join_policy_header(report, "shed") +
                    join_policy_header(report, "binding"));
    for (int m = 0; m < 12; ++m) {
      std::string line = std::to_string(m + 1);
      for (int p = 0; p < report.shed_mwh.cols(); ++p)
        line += "," + csv::format_full(report.shed_mwh(m, p));
      for (int p = 0; p < report.binding_hours.cols(); ++p)
        line += "," + csv::format_full(report.binding_hours(m, p));
      lines.push_back(line);
    }
    csv::write_lines((dir / "shed.csv").string(), lines);
  }
  write_monthly_svg(report, (dir / "monthly_costs.svg").string());
  write_annual_svg(report, (dir / "annual.svg").string());
}

CostReport load_report(const std::string& dir) {
  const fs::path base(dir);
  CostReport report;
  std::vector<std::string> names;
  report.monthly_cost = read_matrix_csv((base / "monthly_costs.csv").string(), &names);
  for (const auto& n : names) report.policies.push_back(criteria::policy_from_name(n));
  report.normalized = read_matrix_csv((base / "normalized.csv").string(), nullptr);

  const csv::Table annual = csv::read_csv((base / "annual.csv").string());
  if (annual.rows.size() != report.policies.size())
    throw IoError(dir + ": annual.csv row count does not match policy columns");
  report.annual_cost.resize(static_cast<int>(report.policies.size()));
  for (size_t p = 0; p < annual.rows.size(); ++p) {
    if (criteria::policy_from_name(annual.rows[p][0]) != report.policies[p])
      throw IoError(dir + ": annual.csv policy order differs from monthly_costs.csv");
    report.annual_cost[static_cast<int>(p)] =
        csv::parse_double(annual.rows[p][1], "annual.csv");
  }

  const csv::Table shed = csv::read_csv((base / "shed.csv").string());
  if (shed.rows.size() != 12) throw IoError(dir + ": shed.csv needs 12 rows");
  const int num = static_cast<int>(report.policies.size());
  report.shed_mwh.resize(12, num);
  report.binding_hours.resize(12, num);
  for (int m = 0; m < 12; ++m)
    for (int p = 0; p < num; ++p) {
      report.shed_mwh(m, p) = csv::parse_double(shed.rows[m][1 + p], "shed.csv");
      report.binding_hours(m, p) =
          csv::parse_double(shed.rows[m][1 + num + p], "shed.csv");
    }
  return report;
}

std::vector<YearRunResult> load_checkpoints(const std::string& checkpoint_dir,
                                            int num_lines) {
  std::vector<YearRunResult> results;
  for (criteria::Policy policy :
       {criteria::Policy::Conventional, criteria::Policy::Monthly,
        criteria::Policy::Seasonal, criteria::Policy::SemiAnnual,
        criteria::Policy::DynamicSubset}) {
    const fs::path dir = fs::path(checkpoint_dir) / criteria::policy_name(policy);
    if (!fs::exists(dir / "policy.json")) continue;
    ordered_json meta;
    {
      std::ifstream in(dir / "policy.json");
      in >> meta;
    }
    const std::string config_hash = meta.value("config_hash", "");
    constexpr int kDays = kHoursPerYear / 24;
    std::vector<DaySummary> days(kDays);
    int lines = num_lines;
    for (int d = 0; d < kDays; ++d) {
      if (!read_day_file(dir / day_file_name(d), config_hash, lines, &days[d]))
        throw IoError("checkpoint incomplete: missing or stale " +
                      (dir / day_file_name(d)).string());
      if (lines < 0) lines = static_cast<int>(days[d].line_binding.size());
    }
    YearRunResult r = aggregate_year(policy, days, lines, config_hash);
    if (meta.contains("dlr_lines"))
      r.dlr_lines = meta["dlr_lines"].get<std::vector<int>>();
    results.push_back(std::move(r));
  }
  if (results.empty())
    throw IoError("no policy checkpoints found under " + checkpoint_dir);
  return results;
}

}  // namespace linerate::sim
