#include "linerate/opf.hpp"

#include "linerate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace linerate::opf {

std::vector<PwlSegment> linearize_cost(const CostCurve& curve, double p_min_mw,
                                       double p_max_mw, int segments) {
  if (segments < 1) throw std::invalid_argument("linearize_cost: segments must be >= 1");
  if (curve.quadratic < 0)
    throw std::invalid_argument("linearize_cost: cost curve is not convex");
  if (p_min_mw > p_max_mw)
    throw std::invalid_argument("linearize_cost: p_min exceeds p_max");
  std::vector<PwlSegment> out;
  if (p_max_mw == p_min_mw) return out;
  const double width = (p_max_mw - p_min_mw) / segments;
  out.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    PwlSegment seg;
    seg.from_mw = p_min_mw + k * width;
    seg.to_mw = k + 1 == segments ? p_max_mw : p_min_mw + (k + 1) * width;
    seg.slope = (curve.eval(seg.to_mw) - curve.eval(seg.from_mw)) /
                (seg.to_mw - seg.from_mw);
    out.push_back(seg);
  }
  return out;
}

lp::LinearProgram build_hour_lp(const NetworkCase& net, const Vector& demand_mw,
                                const Vector& limits_mw, const DispatchOptions& options,
                                HourLpLayout* layout) {
  const int buses = static_cast<int>(net.buses.size());
  const int lines = static_cast<int>(net.lines.size());
  const int gens = static_cast<int>(net.generators.size());
  if (demand_mw.size() != buses)
    throw std::invalid_argument("solve_hour: demand vector size mismatch");
  if (limits_mw.size() != lines)
    throw std::invalid_argument("solve_hour: limits vector size mismatch");
  for (int i = 0; i < buses; ++i)
    if (demand_mw[i] < 0)
      throw std::invalid_argument("solve_hour: negative demand at bus " +
                                  std::to_string(net.buses[i].id));

  const double base = net.base_mva;
  lp::LinearProgram lp;
  HourLpLayout lay;

  // Generation above P_min, one bounded variable per cost segment. Convexity
  // makes the LP fill cheaper segments first, so plain bounds suffice.
  lay.segments.resize(gens);
  lay.gen_first_col.resize(gens);
  for (int g = 0; g < gens; ++g) {
    const Generator& gen = net.generators[g];
    lay.segments[g] =
        linearize_cost(gen.cost, gen.p_min_mw, gen.p_max_mw, options.pwl_segments);
    lay.gen_first_col[g] = lp.num_vars();
    for (const PwlSegment& seg : lay.segments[g])
      lp.add_variable(0.0, (seg.to_mw - seg.from_mw) / base, seg.slope * base);
    lp.offset += gen.cost.eval(gen.p_min_mw);
  }

  lay.angle_col = lp.num_vars();
  for (int i = 0; i < buses; ++i) {
    const bool ref = i == net.reference_bus;
    lp.add_variable(ref ? 0.0 : -std::numbers::pi, ref ? 0.0 : std::numbers::pi, 0.0);
  }

  lay.shed_col = lp.num_vars();
  for (int i = 0; i < buses; ++i)
    lp.add_variable(0.0, demand_mw[i] / base, options.voll * base);

  // Line flow limits on b * (theta_from - theta_to).
  for (int l = 0; l < lines; ++l) {
    const Line& line = net.lines[l];
    const double limit = limits_mw[l] / base;
    lp.add_row(-limit, limit,
               {{lay.angle_col + line.from_bus, line.susceptance},
                {lay.angle_col + line.to_bus, -line.susceptance}});
  }

  // Per-bus balance: generation + shed - net outflow = demand.
  for (int i = 0; i < buses; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    double rhs = demand_mw[i] / base;
    for (int g = 0; g < gens; ++g) {
      if (net.generators[g].bus != i) continue;
      for (size_t k = 0; k < lay.segments[g].size(); ++k)
        coeffs.emplace_back(lay.gen_first_col[g] + static_cast<int>(k), 1.0);
      rhs -= net.generators[g].p_min_mw / base;
    }
    coeffs.emplace_back(lay.shed_col + i, 1.0);
    for (int l = 0; l < lines; ++l) {
      const Line& line = net.lines[l];
      if (line.from_bus == i) {
        coeffs.emplace_back(lay.angle_col + line.from_bus, -line.susceptance);
        coeffs.emplace_back(lay.angle_col + line.to_bus, line.susceptance);
      } else if (line.to_bus == i) {
        coeffs.emplace_back(lay.angle_col + line.from_bus, line.susceptance);
        coeffs.emplace_back(lay.angle_col + line.to_bus, -line.susceptance);
      }
    }
    lp.add_row(rhs, rhs, std::move(coeffs));
  }

  if (layout) *layout = lay;
  return lp;
}

HourlyDispatch solve_hour(const NetworkCase& net, const Vector& demand_mw,
                          const Vector& limits_mw, const DispatchOptions& options) {
  const int buses = static_cast<int>(net.buses.size());
  const int lines = static_cast<int>(net.lines.size());
  const int gens = static_cast<int>(net.generators.size());

  HourLpLayout lay;
  const lp::LinearProgram lp = build_hour_lp(net, demand_mw, limits_mw, options, &lay);
  const lp::LpSolution sol = lp::solve_lp(lp, options.lp);
  if (sol.status != lp::SolveStatus::Optimal)
    throw SolveError("hourly dispatch failed: " + std::string(lp::status_name(sol.status)) +
                     (sol.message.empty() ? "" : " (" + sol.message + ")") +
                     " after " + std::to_string(sol.iterations) + " iterations");

  const double base = net.base_mva;
  HourlyDispatch out;
  out.cost = sol.objective;
  out.generation_mw.resize(gens);
  for (int g = 0; g < gens; ++g) {
    double p = net.generators[g].p_min_mw / base;
    for (size_t k = 0; k < lay.segments[g].size(); ++k)
      p += sol.x[lay.gen_first_col[g] + static_cast<int>(k)];
    out.generation_mw[g] = p * base;
  }
  out.angle_rad.resize(buses);
  for (int i = 0; i < buses; ++i) out.angle_rad[i] = sol.x[lay.angle_col + i];
  out.shed_mw.resize(buses);
  for (int i = 0; i < buses; ++i) out.shed_mw[i] = sol.x[lay.shed_col + i] * base;
  out.flow_mw.resize(lines);
  for (int l = 0; l < lines; ++l) {
    const Line& line = net.lines[l];
    out.flow_mw[l] =
        line.susceptance * (out.angle_rad[line.from_bus] - out.angle_rad[line.to_bus]) *
        base;
  }

  // Residuals recomputed from the extracted quantities (per-unit).
  for (int i = 0; i < buses; ++i) {
    double mismatch = -demand_mw[i] + out.shed_mw[i];
    for (int g = 0; g < gens; ++g)
      if (net.generators[g].bus == i) mismatch += out.generation_mw[g];
    for (int l = 0; l < lines; ++l) {
      if (net.lines[l].from_bus == i) mismatch -= out.flow_mw[l];
      if (net.lines[l].to_bus == i) mismatch += out.flow_mw[l];
    }
    out.balance_residual = std::max(out.balance_residual, std::abs(mismatch) / base);
  }
  for (int l = 0; l < lines; ++l) {
    const double overflow = std::abs(out.flow_mw[l]) - limits_mw[l];
    if (overflow > 0)
      out.flow_residual = std::max(out.flow_residual, overflow / base);
  }
  return out;
}

DayResult solve_day(const NetworkCase& net, const DayProblem& day,
                    const DispatchOptions& options) {
  if (day.demand_mw.cols() != 24 || day.limits_mw.cols() != 24)
    throw std::invalid_argument("solve_day: expected 24 demand and limit columns");
  DayResult result;
  result.hours.reserve(24);
  for (int h = 0; h < 24; ++h) {
    try {
      result.hours.push_back(
          solve_hour(net, day.demand_mw.col(h), day.limits_mw.col(h), options));
    } catch (const SolveError& e) {
      throw SolveError("hour " + std::to_string(h) + ": " + e.what());
    }
    result.cost += result.hours.back().cost;
  }
  return result;
}

}  // namespace linerate::opf
