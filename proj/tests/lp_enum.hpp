#pragma once

// Brute-force LP oracle for tests: enumerates basic solutions of
//   min c^T v  s.t.  rows (=, <=, >=),  l <= v <= u
// after adding one slack column per inequality row. Every vertex of a
// bounded LP is a basic solution, so the minimum over feasible basic
// solutions is the LP optimum. Intended for <= 8 variables, <= 6 rows.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "bbp/lp.hpp"

namespace bbptest {

inline std::optional<double> enumerateLPOptimum(const bbp::LPProblem& p) {
  const int n = p.numVars;
  const int m = static_cast<int>(p.rows.size());
  const int total = n + m;  // one slack per row (fixed to 0 for equalities)

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, total);
  Eigen::VectorXd b(m), lo(total), hi(total), cost = Eigen::VectorXd::Zero(total);
  for (int j = 0; j < n; ++j) {
    lo[j] = p.lower[j];
    hi[j] = p.upper[j];
    cost[j] = p.objective[j];
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int r = 0; r < m; ++r) {
    b[r] = p.rows[r].rhs;
    for (const auto& [j, v] : p.rows[r].coeffs) A(r, j) += v;
    A(r, n + r) = 1.0;
    switch (p.rows[r].sense) {
      case '<': lo[n + r] = 0;    hi[n + r] = inf; break;
      case '>': lo[n + r] = -inf; hi[n + r] = 0;   break;
      default:  lo[n + r] = 0;    hi[n + r] = 0;   break;
    }
  }

  std::optional<double> best;
  std::vector<int> basis(m);
  // Enumerate all m-subsets of columns as candidate bases.
  const auto tryBasis = [&]() {
    Eigen::MatrixXd B(m, m);
    for (int k = 0; k < m; ++k) B.col(k) = A.col(basis[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) return;
    std::vector<int> nonbasic;
    std::vector<char> isBasic(total, 0);
    for (int k = 0; k < m; ++k) isBasic[basis[k]] = 1;
    for (int j = 0; j < total; ++j)
      if (!isBasic[j]) nonbasic.push_back(j);
    const int nn = static_cast<int>(nonbasic.size());
    // Each nonbasic column sits at its lower or upper bound.
    for (long mask = 0; mask < (1L << nn); ++mask) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(total);
      bool ok = true;
      for (int t = 0; t < nn; ++t) {
        const int j = nonbasic[t];
        const double val = (mask >> t) & 1 ? hi[j] : lo[j];
        if (!std::isfinite(val)) { ok = false; break; }
        v[j] = val;
      }
      if (!ok) continue;
      Eigen::VectorXd rhs = b;
      for (int t = 0; t < nn; ++t) rhs -= A.col(nonbasic[t]) * v[nonbasic[t]];
      const Eigen::VectorXd xb = lu.solve(rhs);
      for (int k = 0; k < m; ++k) {
        const int j = basis[k];
        if (xb[k] < lo[j] - 1e-7 || xb[k] > hi[j] + 1e-7) { ok = false; break; }
        v[j] = xb[k];
      }
      if (!ok) continue;
      const double obj = cost.dot(v);
      if (!best || obj < *best) best = obj;
    }
  };

  // No rows: optimum at bound-defined vertex.
  if (m == 0) {
    double obj = 0;
    for (int j = 0; j < n; ++j)
      obj += cost[j] >= 0 ? cost[j] * lo[j] : cost[j] * hi[j];
    return obj;
  }

  const std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) { tryBasis(); return; }
    for (int j = start; j < total; ++j) {
      basis[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace bbptest
