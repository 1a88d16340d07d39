#pragma once

#include "linerate/types.hpp"

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace linerate::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// minimize cost . x + offset
// subject to  row_lo <= A x <= row_hi,  lo <= x <= hi
// Equality rows/fixed variables have equal lower and upper values.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<double> lo, hi;
  double offset = 0.0;

  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> row_lo, row_hi;

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double lower, double upper, double c = 0.0) {
    lo.push_back(lower);
    hi.push_back(upper);
    cost.push_back(c);
    return num_vars() - 1;
  }

  int add_row(double lower, double upper, std::vector<std::pair<int, double>> coeffs) {
    row_lo.push_back(lower);
    row_hi.push_back(upper);
    rows.push_back(std::move(coeffs));
    return num_rows() - 1;
  }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* status_name(SolveStatus status);

struct SolverOptions {
  int max_iterations = 0;  // 0 = derive from problem size
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  int refactor_interval = 100;
  int stall_limit = 500;  // degenerate iterations before switching to Bland's rule
};

struct LpSolution {
  SolveStatus status = SolveStatus::IterationLimit;
  Vector x;  // structural variable values
  double objective = 0.0;
  int iterations = 0;
  double max_bound_violation = 0.0;
  double max_row_violation = 0.0;
  std::string message;
};

// Two-phase primal simplex for bounded variables (revised form, dense basis
// inverse with periodic refactorization).
LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options = {});

}  // namespace linerate::lp
