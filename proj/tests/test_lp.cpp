#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linerate/lp.hpp"

#include "lp_oracle.hpp"

#include <cmath>
#include <random>

using namespace linerate::lp;
using doctest::Approx;

TEST_CASE("one-variable floor") {
  SUBCASE("as a variable bound") {
    LinearProgram lp;
    lp.add_variable(3.0, kInfinity, 1.0);
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.x[0] == Approx(3.0));
    CHECK(sol.objective == Approx(3.0));
  }
  SUBCASE("as a row") {
    LinearProgram lp;
    lp.add_variable(-kInfinity, kInfinity, 1.0);
    lp.add_row(3.0, kInfinity, {{0, 1.0}});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.x[0] == Approx(3.0));
    CHECK(sol.objective == Approx(3.0));
  }
}

TEST_CASE("two-variable vertex solution") {
  // min -x - 2y  s.t.  x + y <= 4, x <= 3, y <= 2, x,y >= 0  ->  (2, 2), -6
  LinearProgram lp;
  lp.add_variable(0.0, 3.0, -1.0);
  lp.add_variable(0.0, 2.0, -2.0);
  lp.add_row(-kInfinity, 4.0, {{0, 1.0}, {1, 1.0}});
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == Approx(2.0));
  CHECK(sol.x[1] == Approx(2.0));
  CHECK(sol.objective == Approx(-6.0));
}

TEST_CASE("equality row") {
  // min x  s.t.  x + y = 5, 0 <= x,y <= 3  ->  x = 2
  LinearProgram lp;
  lp.add_variable(0.0, 3.0, 1.0);
  lp.add_variable(0.0, 3.0, 0.0);
  lp.add_row(5.0, 5.0, {{0, 1.0}, {1, 1.0}});
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == Approx(2.0));
  CHECK(sol.objective == Approx(2.0));
}

TEST_CASE("objective offset and free variables") {
  // min 2x + offset with x free, row -1 <= x <= 7
  LinearProgram lp;
  lp.offset = 11.5;
  lp.add_variable(-kInfinity, kInfinity, 2.0);
  lp.add_row(-1.0, 7.0, {{0, 1.0}});
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == Approx(-1.0));
  CHECK(sol.objective == Approx(11.5 - 2.0));
}

TEST_CASE("unbounded and infeasible detection") {
  SUBCASE("unbounded") {
    LinearProgram lp;
    lp.add_variable(0.0, kInfinity, -1.0);
    CHECK(solve_lp(lp).status == SolveStatus::Unbounded);
  }
  SUBCASE("infeasible row") {
    LinearProgram lp;
    lp.add_variable(0.0, kInfinity, 1.0);
    lp.add_row(-kInfinity, -1.0, {{0, 1.0}});
    CHECK(solve_lp(lp).status == SolveStatus::Infeasible);
  }
  SUBCASE("conflicting equalities") {
    LinearProgram lp;
    lp.add_variable(-kInfinity, kInfinity, 0.0);
    lp.add_variable(-kInfinity, kInfinity, 0.0);
    lp.add_row(1.0, 1.0, {{0, 1.0}, {1, 1.0}});
    lp.add_row(3.0, 3.0, {{0, 1.0}, {1, 1.0}});
    CHECK(solve_lp(lp).status == SolveStatus::Infeasible);
  }
}

TEST_CASE("degenerate vertex does not cycle") {
  // Three constraints meet at (1, 0); redundant actives force degenerate pivots.
  LinearProgram lp;
  lp.add_variable(0.0, kInfinity, -1.0);
  lp.add_variable(0.0, kInfinity, -1.0);
  lp.add_row(-kInfinity, 1.0, {{0, 1.0}});
  lp.add_row(-kInfinity, 1.0, {{0, 1.0}, {1, 1.0}});
  lp.add_row(-kInfinity, 1.0, {{0, 1.0}, {1, 2.0}});
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == Approx(-1.0));
}

TEST_CASE("ranged rows hit both sides") {
  // min x + y  s.t.  2 <= x + y <= 6, 1 <= x - y <= 1.5, free vars
  LinearProgram lp;
  lp.add_variable(-10.0, 10.0, 1.0);
  lp.add_variable(-10.0, 10.0, 1.0);
  lp.add_row(2.0, 6.0, {{0, 1.0}, {1, 1.0}});
  lp.add_row(1.0, 1.5, {{0, 1.0}, {1, -1.0}});
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == Approx(2.0));
  CHECK(sol.x[0] + sol.x[1] == Approx(2.0));
}

TEST_CASE("randomized small programs match the vertex-enumeration oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> var_count(2, 6);
  std::uniform_int_distribution<int> row_count(1, 4);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> ub(0.5, 8.0);
  std::uniform_real_distribution<double> cost(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int optimal_count = 0;
  for (int trial = 0; trial < 250; ++trial) {
    LinearProgram lp;
    const int n = var_count(rng);
    for (int j = 0; j < n; ++j) lp.add_variable(0.0, ub(rng), cost(rng));
    const int m = row_count(rng);
    int equalities = 0;
    for (int i = 0; i < m; ++i) {
      std::vector<std::pair<int, double>> coeffs;
      for (int j = 0; j < n; ++j)
        if (unit(rng) < 0.7) coeffs.emplace_back(j, coef(rng));
      if (coeffs.empty()) coeffs.emplace_back(0, 1.0);
      double a = coef(rng) * 2.0, b = coef(rng) * 2.0;
      if (a > b) std::swap(a, b);
      if (unit(rng) < 0.2 && equalities < n - 1) {
        a = b;  // equality row; keep the active set under-determined
        ++equalities;
      }
      lp.add_row(a, b, std::move(coeffs));
    }

    const auto oracle = lporacle::best_vertex_objective(lp);
    const LpSolution sol = solve_lp(lp);
    if (oracle.has_value()) {
      REQUIRE_MESSAGE(sol.status == SolveStatus::Optimal, "trial ", trial);
      const double scale = std::max(1.0, std::abs(*oracle));
      CHECK_MESSAGE(std::abs(sol.objective - *oracle) / scale < 1e-6, "trial ", trial,
                    ": solver ", sol.objective, " oracle ", *oracle);
      CHECK(sol.max_bound_violation < 1e-8);
      CHECK(sol.max_row_violation < 1e-8);
      ++optimal_count;
    } else {
      CHECK_MESSAGE(sol.status == SolveStatus::Infeasible, "trial ", trial);
    }
  }
  // the generator must actually produce a healthy share of solvable programs
  CHECK(optimal_count > 100);
}
