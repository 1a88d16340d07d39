#include "linerate/lp.hpp"

#include "linerate/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linerate::lp {

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

namespace {

enum class VarState : unsigned char { Basic, AtLower, AtUpper, Free };

// Computational form: every row i gets a slack s_i with coefficient -1 and
// bounds [row_lo, row_hi], turning the system into A x - s = 0. The slacks
// form the initial basis; rows whose natural slack value violates its bounds
// get a phase-1 artificial instead.
struct Tableau {
  int m = 0;           // rows
  int n_struct = 0;    // structural columns
  int n_real = 0;      // structural + slack columns
  int n_total = 0;     // + artificials
  Matrix a;            // m x n_total, dense
  Vector lo, hi;       // column bounds
  Vector cost;         // phase-2 cost (scaled)
  double cost_scale = 1.0;

  std::vector<int> basis;        // column in basis at each row
  std::vector<VarState> state;   // per column
  Vector x;                      // current value of every column

  Matrix basis_inv;
  int pivots_since_refactor = 0;

  Vector work_col;   // B^-1 a_q
  Vector work_y;     // simplex multipliers
  Vector work_d;     // reduced costs
};

void refactorize(Tableau& t) {
  Matrix b(t.m, t.m);
  for (int i = 0; i < t.m; ++i) b.col(i) = t.a.col(t.basis[i]);
  Eigen::PartialPivLU<Matrix> lu(b);
  t.basis_inv = lu.inverse();
  // Recompute basic values from the nonbasic ones: x_B = -B^-1 N x_N.
  Vector rhs = Vector::Zero(t.m);
  for (int j = 0; j < t.n_total; ++j) {
    if (t.state[j] == VarState::Basic) continue;
    if (t.x[j] != 0.0) rhs -= t.a.col(j) * t.x[j];
  }
  Vector xb = t.basis_inv * rhs;
  for (int i = 0; i < t.m; ++i) t.x[t.basis[i]] = xb[i];
  t.pivots_since_refactor = 0;
}

struct PhaseResult {
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;
  std::string message;
};

// Runs the simplex loop on the current basis with the given cost vector.
// `stop_at_zero` ends phase 1 as soon as the objective reaches ~0.
// Columns at or above `fix_on_leave` (the phase-1 artificials) are pinned to
// zero once they leave the basis so they can never re-enter.
PhaseResult run_simplex(Tableau& t, const Vector& cost, bool stop_at_zero,
                        const SolverOptions& opt, int max_iterations,
                        int fix_on_leave) {
  PhaseResult result;
  bool bland = false;
  int stall = 0;
  double best_objective = kInfinity;
  const double pivot_tol = 1e-10;

  for (int iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;

    double objective = 0.0;
    for (int j = 0; j < t.n_total; ++j)
      if (cost[j] != 0.0) objective += cost[j] * t.x[j];
    if (stop_at_zero && objective <= opt.feas_tol) {
      result.status = SolveStatus::Optimal;
      result.iterations = iter;
      return result;
    }
    if (objective < best_objective - 1e-12 * (1.0 + std::abs(best_objective))) {
      best_objective = objective;
      stall = 0;
    } else if (++stall > opt.stall_limit) {
      bland = true;
    }

    // Pricing: d = cost - A^T y with y = B^-T cost_B.
    Vector cost_b(t.m);
    for (int i = 0; i < t.m; ++i) cost_b[i] = cost[t.basis[i]];
    t.work_y.noalias() = t.basis_inv.transpose() * cost_b;
    t.work_d.noalias() = cost - t.a.transpose() * t.work_y;

    int entering = -1;
    int direction = 0;
    double best_violation = opt.opt_tol;
    for (int j = 0; j < t.n_total; ++j) {
      const VarState s = t.state[j];
      if (s == VarState::Basic) continue;
      if (t.lo[j] == t.hi[j]) continue;  // fixed, cannot move
      const double d = t.work_d[j];
      int dir = 0;
      if (s == VarState::AtLower && d < -best_violation) dir = +1;
      else if (s == VarState::AtUpper && d > best_violation) dir = -1;
      else if (s == VarState::Free && std::abs(d) > best_violation) dir = d < 0 ? +1 : -1;
      if (dir == 0) continue;
      entering = j;
      direction = dir;
      if (bland) break;  // first eligible index
      best_violation = std::abs(d);
    }
    if (entering < 0) {
      result.status = SolveStatus::Optimal;
      return result;
    }

    t.work_col.noalias() = t.basis_inv * t.a.col(entering);

    // Ratio test. The entering variable moves by step >= 0 in `direction`;
    // basic variable at row i moves by -direction * w_i * step.
    double step_cap = t.hi[entering] - t.lo[entering];  // bound-to-bound flip
    double step = step_cap;
    int leaving_row = -1;
    bool leaving_hits_upper = false;
    for (int i = 0; i < t.m; ++i) {
      const double rate = direction * t.work_col[i];
      const int col = t.basis[i];
      double limit;
      bool hits_upper;
      if (rate > pivot_tol) {
        if (t.lo[col] == -kInfinity) continue;
        limit = (t.x[col] - t.lo[col]) / rate;
        hits_upper = false;
      } else if (rate < -pivot_tol) {
        if (t.hi[col] == kInfinity) continue;
        limit = (t.x[col] - t.hi[col]) / rate;
        hits_upper = true;
      } else {
        continue;
      }
      if (limit < 0) limit = 0;  // basic value marginally outside its bound
      const bool better =
          limit < step - 1e-9 ||
          (limit < step + 1e-9 && leaving_row >= 0 &&
           (bland ? t.basis[i] < t.basis[leaving_row]
                  : std::abs(t.work_col[i]) > std::abs(t.work_col[leaving_row])));
      if (leaving_row < 0 ? limit < step : better) {
        step = limit;
        leaving_row = i;
        leaving_hits_upper = hits_upper;
      }
    }

    if (step == kInfinity) {
      result.status = SolveStatus::Unbounded;
      result.message = "unbounded direction on column " + std::to_string(entering);
      return result;
    }

    if (leaving_row < 0) {
      // Bound flip: entering moves across its range, basis unchanged.
      for (int i = 0; i < t.m; ++i)
        t.x[t.basis[i]] -= direction * t.work_col[i] * step;
      t.x[entering] += direction * step;
      t.state[entering] =
          t.state[entering] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
      continue;
    }

    const double pivot = t.work_col[leaving_row];
    if (std::abs(pivot) < 1e-9 && t.pivots_since_refactor > 0) {
      // Numerically fragile pivot: refresh the factorization and retry.
      refactorize(t);
      continue;
    }

    for (int i = 0; i < t.m; ++i)
      t.x[t.basis[i]] -= direction * t.work_col[i] * step;
    t.x[entering] = t.x[entering] + direction * step;

    const int leaving_col = t.basis[leaving_row];
    t.state[leaving_col] = leaving_hits_upper ? VarState::AtUpper : VarState::AtLower;
    t.x[leaving_col] = leaving_hits_upper ? t.hi[leaving_col] : t.lo[leaving_col];
    if (leaving_col >= fix_on_leave) {
      t.lo[leaving_col] = 0.0;
      t.hi[leaving_col] = 0.0;
      t.x[leaving_col] = 0.0;
      t.state[leaving_col] = VarState::AtLower;
    }
    t.basis[leaving_row] = entering;
    t.state[entering] = VarState::Basic;

    // Product-form update: B_inv -= ((w - e_r)/w_r) * B_inv.row(r).
    Vector adj = t.work_col;
    adj[leaving_row] -= 1.0;
    const Eigen::RowVectorXd pivot_row = t.basis_inv.row(leaving_row);
    t.basis_inv.noalias() -= (adj / pivot) * pivot_row;

    if (++t.pivots_since_refactor >= opt.refactor_interval) refactorize(t);
  }
  result.status = SolveStatus::IterationLimit;
  result.message = "iteration limit reached";
  return result;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options) {
  const int m = lp.num_rows();
  const int n = lp.num_vars();
  for (int j = 0; j < n; ++j)
    if (lp.lo[j] > lp.hi[j])
      throw std::invalid_argument("lp: variable " + std::to_string(j) +
                                  " has lower bound above upper bound");
  for (int i = 0; i < m; ++i)
    if (lp.row_lo[i] > lp.row_hi[i])
      throw std::invalid_argument("lp: row " + std::to_string(i) +
                                  " has lower bound above upper bound");

  Tableau t;
  t.m = m;
  t.n_struct = n;
  t.n_real = n + m;

  // Count prospective artificials after placing nonbasic structural values.
  std::vector<double> start(n);
  for (int j = 0; j < n; ++j) {
    if (lp.lo[j] != -kInfinity) start[j] = lp.lo[j];
    else if (lp.hi[j] != kInfinity) start[j] = lp.hi[j];
    else start[j] = 0.0;
  }
  Vector activity = Vector::Zero(m);
  for (int i = 0; i < m; ++i)
    for (const auto& [j, coef] : lp.rows[i]) activity[i] += coef * start[j];

  std::vector<int> artificial_row;
  for (int i = 0; i < m; ++i)
    if (activity[i] < lp.row_lo[i] - options.feas_tol ||
        activity[i] > lp.row_hi[i] + options.feas_tol)
      artificial_row.push_back(i);

  t.n_total = t.n_real + static_cast<int>(artificial_row.size());
  t.a = Matrix::Zero(m, t.n_total);
  t.lo.resize(t.n_total);
  t.hi.resize(t.n_total);
  t.x = Vector::Zero(t.n_total);
  t.state.assign(t.n_total, VarState::AtLower);
  t.basis.assign(m, -1);

  for (int j = 0; j < n; ++j) {
    t.lo[j] = lp.lo[j];
    t.hi[j] = lp.hi[j];
    t.x[j] = start[j];
    t.state[j] = lp.lo[j] != -kInfinity ? VarState::AtLower
                : lp.hi[j] != kInfinity ? VarState::AtUpper
                                        : VarState::Free;
  }
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, coef] : lp.rows[i]) t.a(i, j) += coef;
    const int s = n + i;
    t.a(i, s) = -1.0;
    t.lo[s] = lp.row_lo[i];
    t.hi[s] = lp.row_hi[i];
  }

  // Initial basis: the slack of every satisfiable row, an artificial elsewhere.
  Vector phase1_cost = Vector::Zero(t.n_total);
  {
    int next_artificial = t.n_real;
    size_t k = 0;
    for (int i = 0; i < m; ++i) {
      const int s = n + i;
      if (k < artificial_row.size() && artificial_row[k] == i) {
        const double clamped = std::clamp(activity[i], lp.row_lo[i], lp.row_hi[i]);
        t.x[s] = clamped;
        t.state[s] = clamped == lp.row_lo[i] ? VarState::AtLower : VarState::AtUpper;
        const int av = next_artificial++;
        const double residual = clamped - activity[i];
        t.a(i, av) = residual < 0 ? -1.0 : 1.0;
        t.lo[av] = 0.0;
        t.hi[av] = kInfinity;
        t.x[av] = std::abs(residual);
        t.state[av] = VarState::Basic;
        t.basis[i] = av;
        phase1_cost[av] = 1.0;
        ++k;
      } else {
        t.x[s] = activity[i];
        t.state[s] = VarState::Basic;
        t.basis[i] = s;
      }
    }
  }

  t.cost = Vector::Zero(t.n_total);
  double cost_scale = 1.0;
  for (int j = 0; j < n; ++j) cost_scale = std::max(cost_scale, std::abs(lp.cost[j]));
  for (int j = 0; j < n; ++j) t.cost[j] = lp.cost[j] / cost_scale;
  t.cost_scale = cost_scale;

  t.work_col.resize(m);
  t.work_y.resize(m);
  t.work_d.resize(t.n_total);
  refactorize(t);

  const int max_iterations = options.max_iterations > 0
                                 ? options.max_iterations
                                 : 500 + 50 * (m + t.n_total);

  LpSolution solution;

  if (!artificial_row.empty()) {
    PhaseResult phase1 =
        run_simplex(t, phase1_cost, true, options, max_iterations, t.n_real);
    solution.iterations += phase1.iterations;
    double infeasibility = 0.0;
    for (int j = t.n_real; j < t.n_total; ++j) infeasibility += t.x[j];
    if (phase1.status == SolveStatus::IterationLimit) {
      solution.status = SolveStatus::IterationLimit;
      solution.message = "phase 1: " + phase1.message;
      return solution;
    }
    if (phase1.status == SolveStatus::Unbounded || infeasibility > 1e-7) {
      solution.status = SolveStatus::Infeasible;
      solution.message =
          "infeasible (residual " + std::to_string(infeasibility) + ")";
      return solution;
    }
    // Artificials are pinned at zero for phase 2.
    for (int j = t.n_real; j < t.n_total; ++j) {
      t.lo[j] = 0.0;
      t.hi[j] = 0.0;
      if (t.state[j] != VarState::Basic) {
        t.state[j] = VarState::AtLower;
        t.x[j] = 0.0;
      }
    }
  }

  PhaseResult phase2 =
      run_simplex(t, t.cost, false, options, max_iterations, t.n_total);
  solution.iterations += phase2.iterations;
  if (phase2.status != SolveStatus::Optimal) {
    solution.status = phase2.status;
    solution.message = phase2.message;
    return solution;
  }

  refactorize(t);  // tighten basic values before extraction

  solution.status = SolveStatus::Optimal;
  solution.x.resize(n);
  for (int j = 0; j < n; ++j) solution.x[j] = t.x[j];
  double objective = lp.offset;
  for (int j = 0; j < n; ++j) objective += lp.cost[j] * t.x[j];
  solution.objective = objective;

  for (int j = 0; j < t.n_real; ++j) {
    const double below = t.lo[j] == -kInfinity ? 0.0 : t.lo[j] - t.x[j];
    const double above = t.hi[j] == kInfinity ? 0.0 : t.x[j] - t.hi[j];
    const double viol = std::max(0.0, std::max(below, above));
    if (j < n)
      solution.max_bound_violation = std::max(solution.max_bound_violation, viol);
    else
      solution.max_row_violation = std::max(solution.max_row_violation, viol);
  }
  return solution;
}

}  // namespace linerate::lp
