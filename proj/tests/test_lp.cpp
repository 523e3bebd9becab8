#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bbp/lp.hpp"
#include "lp_enum.hpp"

using namespace bbp;

TEST_CASE("min -x-y with x+y <= 1 on the unit box gives -1") {
  LPProblem p;
  p.addVar(0, 1, -1);
  p.addVar(0, 1, -1);
  p.addRow(LPRow{{{0, 1.0}, {1, 1.0}}, '<', 1.0});
  const auto res = solveLP(p);
  REQUIRE(res.status == LPStatus::Optimal);
  CHECK(res.objective == doctest::Approx(-1.0));
}

TEST_CASE("contradictory rows are reported infeasible") {
  LPProblem p;
  p.addVar(0, 1, 0);
  p.addRow(LPRow{{{0, 1.0}}, '>', 0.6});
  p.addRow(LPRow{{{0, 1.0}}, '<', 0.4});
  CHECK(solveLP(p).status == LPStatus::Infeasible);
}

TEST_CASE("equality row pins the solution") {
  LPProblem p;
  p.addVar(0, 1, 1);
  p.addVar(0, 1, 2);
  p.addRow(LPRow{{{0, 1.0}, {1, 1.0}}, '=', 1.0});
  const auto res = solveLP(p);
  REQUIRE(res.status == LPStatus::Optimal);
  CHECK(res.objective == doctest::Approx(1.0));  // x=1, y=0
  CHECK(res.primal[0] == doctest::Approx(1.0));
}

TEST_CASE("negative bounds are handled") {
  LPProblem p;
  p.addVar(-2, 3, 1);
  p.addVar(-1, 1, -1);
  p.addRow(LPRow{{{0, 1.0}, {1, -1.0}}, '>', -1.0});
  const auto res = solveLP(p);
  REQUIRE(res.status == LPStatus::Optimal);
  // min x - y, x - y >= -1 -> optimum -1 (e.g. x=0, y=1).
  CHECK(res.objective == doctest::Approx(-1.0));
}

TEST_CASE("determinism: identical input gives identical objective") {
  LPProblem p;
  p.addVar(0, 1, -1);
  p.addVar(0, 1, -0.5);
  p.addVar(0, 2, 0.25);
  p.addRow(LPRow{{{0, 1.0}, {1, 2.0}, {2, -1.0}}, '<', 1.5});
  p.addRow(LPRow{{{0, 1.0}, {2, 1.0}}, '>', 0.5});
  const auto r1 = solveLP(p);
  const auto r2 = solveLP(p);
  REQUIRE(r1.status == LPStatus::Optimal);
  CHECK(r1.status == r2.status);
  CHECK(r1.objective == doctest::Approx(r2.objective).epsilon(1e-12));
}

TEST_CASE("optimal solutions satisfy bounds and rows to tolerance") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> C(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    LPProblem p;
    const int n = 4 + static_cast<int>(rng() % 3);
    for (int j = 0; j < n; ++j) {
      const double a = C(rng), b = C(rng);
      p.addVar(std::min(a, b), std::max(a, b) + 0.2, C(rng));
    }
    const int m = 2 + static_cast<int>(rng() % 3);
    for (int r = 0; r < m; ++r) {
      LPRow row;
      for (int j = 0; j < n; ++j)
        if (rng() % 2) row.coeffs.emplace_back(j, C(rng));
      row.sense = "<>="[rng() % 3];
      row.rhs = C(rng);
      p.rows.push_back(row);
    }
    const auto res = solveLP(p);
    if (res.status != LPStatus::Optimal) continue;
    for (int j = 0; j < n; ++j) {
      CHECK(res.primal[j] >= p.lower[j] - 1e-7);
      CHECK(res.primal[j] <= p.upper[j] + 1e-7);
    }
    for (const auto& row : p.rows) {
      double lhs = 0;
      for (const auto& [j, v] : row.coeffs) lhs += v * res.primal[j];
      if (row.sense == '<') CHECK(lhs <= row.rhs + 1e-6);
      else if (row.sense == '>') CHECK(lhs >= row.rhs - 1e-6);
      else CHECK(lhs == doctest::Approx(row.rhs).epsilon(1e-6));
    }
  }
}

TEST_CASE("random 6-var 4-row LPs match basic-solution enumeration") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> C(-1, 1);
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    LPProblem p;
    for (int j = 0; j < 6; ++j) {
      const double a = C(rng), b = C(rng);
      p.addVar(std::min(a, b), std::max(a, b) + 0.1, C(rng));
    }
    // Anchor the rows at a random interior point so most draws are feasible
    // and the enumeration oracle has something to find.
    Eigen::VectorXd anchor(6);
    for (int j = 0; j < 6; ++j) {
      const double t = 0.2 + 0.6 * (C(rng) + 1) / 2;
      anchor[j] = p.lower[j] + t * (p.upper[j] - p.lower[j]);
    }
    for (int r = 0; r < 4; ++r) {
      LPRow row;
      double at = 0;
      for (int j = 0; j < 6; ++j)
        if (rng() % 2) {
          const double c = C(rng);
          row.coeffs.emplace_back(j, c);
          at += c * anchor[j];
        }
      row.sense = "<>="[rng() % 3];
      const double slack = 0.3 * std::abs(C(rng));
      row.rhs = row.sense == '<' ? at + slack
              : row.sense == '>' ? at - slack
                                 : at;
      p.rows.push_back(row);
    }
    const auto oracle = bbptest::enumerateLPOptimum(p);
    const auto res = solveLP(p);
    if (oracle) {
      REQUIRE(res.status == LPStatus::Optimal);
      CHECK(res.objective == doctest::Approx(*oracle).epsilon(1e-6));
      ++solved;
    } else {
      CHECK(res.status == LPStatus::Infeasible);
    }
  }
  CHECK(solved >= 10);  // the family must exercise the optimal path
}
