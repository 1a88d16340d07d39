#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linerate/errors.hpp"
#include "linerate/sim.hpp"

#include "test_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace linerate;
using namespace linerate::sim;
using doctest::Approx;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

criteria::TemperatureCriteria reference_monthly() {
  criteria::TemperatureCriteria crit;
  crit.design_temp = {24.37, 32.0, 32.61, 36.95, 42.91, 40.25,
                      45.11, 44.65, 41.0,  34.87, 32.86, 26.22};
  crit.policy = criteria::Policy::Monthly;
  crit.provenance = "reference";
  return crit;
}

YearRunConfig two_bus_config(double load_mw, double limit_mw) {
  YearRunConfig config;
  config.network = testutil::two_bus_case(load_mw, limit_mw);
  config.conductor = thermal::kepco_acsr480();
  config.policy_ambient.wind_speed = 0.5;
  config.policy_ambient.effective_solar = 1000.0;
  config.monthly_criteria = reference_monthly();
  config.demand_ratio = Vector::Ones(kHoursPerYear);
  config.config_hash = "test";
  return config;
}

}  // namespace

TEST_CASE("synthetic demand profile") {
  DemandProfileParams params;
  const Vector a = synthetic_demand_profile(params);
  const Vector b = synthetic_demand_profile(params);
  REQUIRE(a.size() == kHoursPerYear);
  CHECK(a == b);  // bit-identical for equal seeds

  params.seed = 8;
  const Vector c = synthetic_demand_profile(params);
  CHECK(a != c);

  CHECK(a.minCoeff() > 0.4);
  CHECK(a.maxCoeff() < 1.6);
  // afternoon peak above the nightly trough on an ordinary day
  CHECK(a[24 * 3 + 14] > a[24 * 3 + 2]);
}

TEST_CASE("demand csv round-trip and validation") {
  testutil::TempDir tmp("demand");
  const Vector profile = synthetic_demand_profile({});
  const std::string path = tmp.file("demand.csv");
  write_demand_csv(profile, path);
  const Vector loaded = load_demand_csv(path);
  CHECK(loaded == profile);  // full-precision round trip

  SUBCASE("row count enforced") {
    testutil::write_file(tmp.file("short.csv"), "hour,ratio\n0,1.0\n");
    CHECK_THROWS_AS(load_demand_csv(tmp.file("short.csv")), IoError);
  }
  SUBCASE("negative ratio rejected") {
    std::vector<std::string> lines = {"hour,ratio"};
    for (int h = 0; h < kHoursPerYear; ++h)
      lines.push_back(std::to_string(h) + (h == 7 ? ",-0.5" : ",1.0"));
    std::ofstream out(tmp.file("neg.csv"));
    for (const auto& l : lines) out << l << "\n";
    out.close();
    CHECK_THROWS_AS(load_demand_csv(tmp.file("neg.csv")), IoError);
  }
}

TEST_CASE("criteria_for_policy dispatches to the right derivation") {
  const YearRunConfig config = two_bus_config(50.0, 100.0);
  CHECK(criteria_for_policy(config, criteria::Policy::Conventional).design_temp[0] == 40.0);
  CHECK(criteria_for_policy(config, criteria::Policy::Monthly).design_temp[0] ==
        Approx(24.37));
  CHECK(criteria_for_policy(config, criteria::Policy::Seasonal).design_temp[0] ==
        Approx(32.0));
  CHECK(criteria_for_policy(config, criteria::Policy::SemiAnnual).design_temp[0] ==
        Approx(36.95));
}

TEST_CASE("conventional year run on the two-bus case") {
  YearRunConfig config = two_bus_config(50.0, 100.0);
  const YearRunResult result = run_year(config, criteria::Policy::Conventional);

  // every hour is the hand-solved $500 dispatch
  CHECK(result.annual_cost == Approx(8760.0 * 500.0).epsilon(1e-12));
  CHECK(result.monthly_cost[0] == Approx(31 * 24 * 500.0).epsilon(1e-12));
  CHECK(result.monthly_cost[1] == Approx(28 * 24 * 500.0).epsilon(1e-12));
  CHECK(result.day_cost.size() == 365);
  CHECK(result.day_cost[100] == Approx(24 * 500.0).epsilon(1e-12));

  // aggregation: annual equals the day sum to the cent
  double day_sum = 0;
  for (double d : result.day_cost) day_sum += d;
  CHECK(std::abs(result.annual_cost - day_sum) < 0.005);

  CHECK(result.max_balance_residual < 1e-6);
  CHECK(result.max_flow_residual < 1e-6);
  for (int m = 0; m < 12; ++m) CHECK(result.monthly_shed_mwh[m] == 0.0);
  // the 100 MW line never binds at 50 MW of demand
  CHECK(result.line_binding_hours[0] == 0);
  CHECK(result.line_abs_flow_mw[0] == Approx(8760.0 * 50.0).epsilon(1e-9));
}

TEST_CASE("zero demand ratio zeroes the year") {
  YearRunConfig config = two_bus_config(50.0, 100.0);
  config.demand_ratio = Vector::Zero(kHoursPerYear);
  const YearRunResult result = run_year(config, criteria::Policy::Conventional);
  CHECK(result.annual_cost == 0.0);
  for (double c : result.day_cost) CHECK(c == 0.0);
}

TEST_CASE("all-40 monthly criteria reproduce the conventional run exactly") {
  YearRunConfig config = two_bus_config(50.0, 90.0);
  config.monthly_criteria.design_temp.fill(40.0);
  const YearRunResult conv = run_year(config, criteria::Policy::Conventional);
  const YearRunResult monthly = run_year(config, criteria::Policy::Monthly);
  CHECK(conv.annual_cost == monthly.annual_cost);  // bit-exact
  for (int m = 0; m < 12; ++m) CHECK(conv.monthly_cost[m] == monthly.monthly_cost[m]);
}

TEST_CASE("policy ordering transfers to annual cost on a congested corridor") {
  // 80 MW of demand against a 60 MW conventional limit: the line binds every
  // hour, so element-wise schedule dominance must order the annual costs.
  YearRunConfig config = two_bus_config(80.0, 60.0);
  config.network.generators[0].p_max_mw = 200.0;
  config.network.generators.push_back({1, 0.0, 100.0, {0.0, 45.0, 0.0}, "local"});

  const YearRunResult conv = run_year(config, criteria::Policy::Conventional);
  const YearRunResult monthly = run_year(config, criteria::Policy::Monthly);
  const YearRunResult seasonal = run_year(config, criteria::Policy::Seasonal);
  const YearRunResult half = run_year(config, criteria::Policy::SemiAnnual);

  // block dominance: seasonal/semiannual temps >= monthly temps, so their
  // schedules are element-wise tighter and their costs at least as large
  CHECK(seasonal.annual_cost >= monthly.annual_cost - 1e-6);
  CHECK(half.annual_cost >= seasonal.annual_cost - 1e-6);

  // every month, tighter limit means higher (or equal) cost
  for (int m = 0; m < 12; ++m) {
    CHECK(seasonal.monthly_cost[m] >= monthly.monthly_cost[m] - 1e-9);
    CHECK(half.monthly_cost[m] >= seasonal.monthly_cost[m] - 1e-9);
  }

  // the congested line is binding virtually always under the conventional run
  CHECK(conv.line_binding_hours[0] > 8000);
}

TEST_CASE("dlr needs its baseline") {
  YearRunConfig config = two_bus_config(50.0, 100.0);
  config.has_year_temps = true;
  config.year_temps.fill(20.0);
  CHECK_THROWS_AS(run_year(config, criteria::Policy::DynamicSubset),
                  std::invalid_argument);

  const YearRunResult conv = run_year(config, criteria::Policy::Conventional);
  YearRunResult stale = conv;
  stale.config_hash = "other";
  CHECK_THROWS_AS(run_year(config, criteria::Policy::DynamicSubset, &stale),
                  std::invalid_argument);

  const YearRunResult dlr = run_year(config, criteria::Policy::DynamicSubset, &conv);
  CHECK(dlr.dlr_lines == std::vector<int>{0});  // max(1, floor(0.1 * 1))
  // cool weather all year -> more capacity than conventional, never less cost
  CHECK(dlr.annual_cost <= conv.annual_cost + 1e-6);
}

TEST_CASE("checkpointed runs resume and reload") {
  testutil::TempDir tmp("checkpoint");
  YearRunConfig config = two_bus_config(50.0, 45.0);  // binding + shedding
  config.checkpoint_dir = tmp.path().string();

  const YearRunResult first = run_year(config, criteria::Policy::Conventional);
  CHECK(std::filesystem::exists(tmp.path() / "conventional" / "day_000.json"));
  CHECK(std::filesystem::exists(tmp.path() / "conventional" / "day_364.json"));

  // a second run must reproduce the aggregates from the persisted days
  const YearRunResult second = run_year(config, criteria::Policy::Conventional);
  CHECK(first.annual_cost == second.annual_cost);
  CHECK(first.monthly_shed_mwh[4] == second.monthly_shed_mwh[4]);
  CHECK(first.line_binding_hours == second.line_binding_hours);

  // load_checkpoints rebuilds the same aggregates
  const auto loaded = load_checkpoints(tmp.path().string(), 1);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].policy == criteria::Policy::Conventional);
  CHECK(loaded[0].annual_cost == Approx(first.annual_cost).epsilon(1e-12));

  // stale hash invalidates the cache and recomputes
  YearRunConfig changed = config;
  changed.config_hash = "different";
  const YearRunResult third = run_year(changed, criteria::Policy::Conventional);
  CHECK(third.annual_cost == Approx(first.annual_cost).epsilon(1e-12));
}

TEST_CASE("worker pool matches the sequential path") {
  YearRunConfig config = two_bus_config(60.0, 55.0);
  const YearRunResult sequential = run_year(config, criteria::Policy::Conventional);
  config.jobs = 3;
  const YearRunResult parallel = run_year(config, criteria::Policy::Conventional);
  CHECK(sequential.annual_cost == parallel.annual_cost);  // bit-exact
  for (int m = 0; m < 12; ++m)
    CHECK(sequential.monthly_cost[m] == parallel.monthly_cost[m]);
}

TEST_CASE("compare_policies") {
  YearRunResult conv;
  conv.policy = criteria::Policy::Conventional;
  conv.config_hash = "h";
  for (int m = 0; m < 12; ++m) conv.monthly_cost[m] = 1000.0 + m;
  for (int m = 0; m < 12; ++m) conv.annual_cost += conv.monthly_cost[m];

  SUBCASE("identical fragments normalize to 100 everywhere") {
    YearRunResult twin = conv;
    twin.policy = criteria::Policy::Monthly;
    const CostReport report = compare_policies({conv, twin});
    for (int m = 0; m < 12; ++m) {
      CHECK(report.normalized(m, 0) == 100.0);
      CHECK(report.normalized(m, 1) == 100.0);
    }
  }

  SUBCASE("a uniform 90 percent fragment normalizes to 90") {
    YearRunResult cheaper = conv;
    cheaper.policy = criteria::Policy::Monthly;
    for (int m = 0; m < 12; ++m) cheaper.monthly_cost[m] *= 0.9;
    const CostReport report = compare_policies({conv, cheaper});
    for (int m = 0; m < 12; ++m)
      CHECK(report.normalized(m, 1) == Approx(90.0).epsilon(1e-12));
  }

  SUBCASE("mismatched configs are rejected") {
    YearRunResult other = conv;
    other.policy = criteria::Policy::Monthly;
    other.config_hash = "different";
    CHECK_THROWS_AS(compare_policies({conv, other}), std::invalid_argument);
  }

  SUBCASE("missing conventional reference is rejected") {
    YearRunResult alone = conv;
    alone.policy = criteria::Policy::Monthly;
    CHECK_THROWS_AS(compare_policies({alone}), std::invalid_argument);
  }

  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(compare_policies({}), std::invalid_argument);
  }
}

TEST_CASE("report emission round-trips and is byte-deterministic") {
  testutil::TempDir tmp("report");
  YearRunConfig config = two_bus_config(50.0, 45.0);
  const YearRunResult conv = run_year(config, criteria::Policy::Conventional);
  YearRunResult monthly = run_year(config, criteria::Policy::Monthly);
  const CostReport report = compare_policies({conv, monthly});

  const std::string dir_a = tmp.file("a");
  emit_reports(report, dir_a);
  for (const char* name : {"monthly_costs.csv", "normalized.csv", "annual.csv",
                           "shed.csv", "monthly_costs.svg", "annual.svg"})
    CHECK(std::filesystem::exists(std::filesystem::path(dir_a) / name));

  const CostReport loaded = load_report(dir_a);
  REQUIRE(loaded.policies.size() == report.policies.size());
  CHECK(loaded.monthly_cost == report.monthly_cost);  // %.17g round trip
  CHECK(loaded.normalized == report.normalized);
  CHECK(loaded.annual_cost == report.annual_cost);
  CHECK(loaded.shed_mwh == report.shed_mwh);
  CHECK(loaded.binding_hours == report.binding_hours);

  const std::string dir_b = tmp.file("b");
  emit_reports(report, dir_b);
  for (const char* name : {"monthly_costs.csv", "normalized.csv", "annual.csv",
                           "shed.csv", "monthly_costs.svg", "annual.svg"})
    CHECK(slurp(dir_a + "/" + std::string(name)) == slurp(dir_b + "/" + name));

  CHECK_THROWS_AS(emit_reports(CostReport{}, tmp.file("c")), std::invalid_argument);
}
