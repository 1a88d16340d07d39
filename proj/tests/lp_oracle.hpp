#pragma once

// Brute-force LP oracle: enumerates every candidate vertex (each choice of n
// active hyperplanes from the constraint set), keeps the feasible ones and
// returns the best objective. Exponential, for small test instances only;
// deliberately independent of the simplex implementation.

#include "linerate/lp.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace lporacle {

struct Hyperplane {
  Eigen::VectorXd normal;
  double rhs;
};

inline std::optional<double> best_vertex_objective(const linerate::lp::LinearProgram& lp,
                                                   double tol = 1e-7) {
  using linerate::lp::kInfinity;
  const int n = lp.num_vars();

  std::vector<Hyperplane> mandatory, optional_planes;
  auto dense_row = [&](int i) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (const auto& [j, c] : lp.rows[i]) a[j] += c;
    return a;
  };
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Eigen::VectorXd a = dense_row(i);
    if (lp.row_lo[i] == lp.row_hi[i]) {
      mandatory.push_back({a, lp.row_lo[i]});
    } else {
      if (lp.row_lo[i] != -kInfinity) optional_planes.push_back({a, lp.row_lo[i]});
      if (lp.row_hi[i] != kInfinity) optional_planes.push_back({a, lp.row_hi[i]});
    }
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[j] = 1.0;
    if (lp.lo[j] == lp.hi[j]) {
      mandatory.push_back({e, lp.lo[j]});
    } else {
      if (lp.lo[j] != -kInfinity) optional_planes.push_back({e, lp.lo[j]});
      if (lp.hi[j] != kInfinity) optional_planes.push_back({e, lp.hi[j]});
    }
  }

  const int need = n - static_cast<int>(mandatory.size());
  if (need < 0)
    throw std::invalid_argument("oracle: more equalities than variables");

  Eigen::MatrixXd system(n, n);
  Eigen::VectorXd rhs(n);
  for (size_t i = 0; i < mandatory.size(); ++i) {
    system.row(static_cast<int>(i)) = mandatory[i].normal.transpose();
    rhs[static_cast<int>(i)] = mandatory[i].rhs;
  }

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (int j = 0; j < n; ++j) {
      if (lp.lo[j] != -kInfinity && x[j] < lp.lo[j] - tol) return false;
      if (lp.hi[j] != kInfinity && x[j] > lp.hi[j] + tol) return false;
    }
    for (int i = 0; i < lp.num_rows(); ++i) {
      double activity = 0;
      for (const auto& [j, c] : lp.rows[i]) activity += c * x[j];
      if (lp.row_lo[i] != -kInfinity && activity < lp.row_lo[i] - tol) return false;
      if (lp.row_hi[i] != kInfinity && activity > lp.row_hi[i] + tol) return false;
    }
    return true;
  };

  std::optional<double> best;
  auto try_vertex = [&]() {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd x = lu.solve(rhs);
    if (!feasible(x)) return;
    double obj = lp.offset;
    for (int j = 0; j < n; ++j) obj += lp.cost[j] * x[j];
    if (!best || obj < *best) best = obj;
  };

  if (need == 0) {
    try_vertex();
    return best;
  }

  const int base = static_cast<int>(mandatory.size());
  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  const int total = static_cast<int>(optional_planes.size());
  if (total < need) return best;
  while (true) {
    for (int i = 0; i < need; ++i) {
      system.row(base + i) = optional_planes[pick[i]].normal.transpose();
      rhs[base + i] = optional_planes[pick[i]].rhs;
    }
    try_vertex();
    int k = need - 1;
    while (k >= 0 && pick[k] == total - need + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int i = k + 1; i < need; ++i) pick[i] = pick[i - 1] + 1;
  }
  return best;
}

}  // namespace lporacle
