#pragma once

#include "linerate/lp.hpp"
#include "linerate/network.hpp"
#include "linerate/types.hpp"

#include <vector>

namespace linerate::opf {

struct PwlSegment {
  double from_mw = 0.0;
  double to_mw = 0.0;
  double slope = 0.0;  // $/MWh, secant of the cost curve over the segment
};

// Convex piecewise-linear over-approximation of a quadratic cost curve with
// equally spaced breakpoints. Exact at breakpoints; the gap in between is at
// most quadratic * (segment width)^2 / 4.
std::vector<PwlSegment> linearize_cost(const CostCurve& curve, double p_min_mw,
                                       double p_max_mw, int segments);

struct HourlyDispatch {
  Vector generation_mw;  // per generator
  Vector angle_rad;      // per bus, reference fixed at 0
  Vector flow_mw;        // per line, positive from -> to
  Vector shed_mw;        // per bus
  double cost = 0.0;     // $, includes constant cost terms and VOLL charges
  double balance_residual = 0.0;  // max per-bus mismatch, per-unit
  double flow_residual = 0.0;     // max flow/limit inconsistency, per-unit
};

struct DayProblem {
  Matrix demand_mw;  // buses x 24
  Matrix limits_mw;  // lines x 24
};

struct DayResult {
  std::vector<HourlyDispatch> hours;
  double cost = 0.0;
};

struct DispatchOptions {
  double voll = 9000.0;  // $/MWh for unserved demand
  int pwl_segments = 10;
  lp::SolverOptions lp;
};

// Column layout of the hourly dispatch LP, exposed for testing.
struct HourLpLayout {
  std::vector<int> gen_first_col;               // first segment column per generator
  std::vector<std::vector<PwlSegment>> segments;
  int angle_col = 0;  // angles start here, one per bus
  int shed_col = 0;   // shed variables start here, one per bus
};

lp::LinearProgram build_hour_lp(const NetworkCase& net, const Vector& demand_mw,
                                const Vector& limits_mw, const DispatchOptions& options,
                                HourLpLayout* layout = nullptr);

// One hour of DC optimal power flow: piecewise-linearized generation cost
// plus VOLL-priced shedding, line flows limited by `limits_mw`.
HourlyDispatch solve_hour(const NetworkCase& net, const Vector& demand_mw,
                          const Vector& limits_mw, const DispatchOptions& options);

// 24 independent hourly solves; the day optimum is their sum.
DayResult solve_day(const NetworkCase& net, const DayProblem& day,
                    const DispatchOptions& options);

}  // namespace linerate::opf
