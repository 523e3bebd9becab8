#include "bbp/fixings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bbp {

namespace {

constexpr double kDegenerateWidth = 1e-12;
constexpr double kZeroCoef = 1e-12;

}  // namespace

RescaledRow rescaleRow(const BilinearForm& form, const Box& nodeBox, int n1) {
  RescaledRow out;
  auto lo = [&](int combined) { return nodeBox.lo[combined]; };
  auto width = [&](int combined) {
    return nodeBox.hi[combined] - nodeBox.lo[combined];
  };
  auto live = [&](int combined) { return width(combined) > kDegenerateWidth; };

  std::set<int> liveX, liveY;
  std::map<std::pair<int, int>, double> q;
  std::map<int, double> a, b;
  double c = form.constant;

  for (const auto& t : form.qTerms) {
    const int ci = t.i, cj = n1 + t.j;
    const double lx = lo(ci), wx = width(ci);
    const double ly = lo(cj), wy = width(cj);
    c += t.value * lx * ly;
    if (live(ci)) a[t.i] += t.value * wx * ly;
    if (live(cj)) b[t.j] += t.value * wy * lx;
    if (live(ci) && live(cj)) q[{t.i, t.j}] += t.value * wx * wy;
    if (live(ci)) liveX.insert(t.i);
    if (live(cj)) liveY.insert(t.j);
  }
  for (const auto& [i, v] : form.aLin) {
    c += v * lo(i);
    if (live(i)) {
      a[i] += v * width(i);
      liveX.insert(i);
    }
  }
  for (const auto& [j, v] : form.bLin) {
    c += v * lo(n1 + j);
    if (live(n1 + j)) {
      b[j] += v * width(n1 + j);
      liveY.insert(j);
    }
  }

  out.liveX.assign(liveX.begin(), liveX.end());
  out.liveY.assign(liveY.begin(), liveY.end());
  for (const auto& [ij, v] : q)
    if (std::abs(v) > kZeroCoef) out.qTerms.push_back({ij.first, ij.second, v});
  for (const auto& [i, v] : a) out.aLin.emplace_back(i, v);
  for (const auto& [j, v] : b) out.bLin.emplace_back(j, v);
  out.constant = c;
  return out;
}

FixingResult enumerateFixings(const BilinearForm& form, const Box& nodeBox,
                              int n1, double bandLo, double bandHi, int cap) {
  FixingResult result;
  const RescaledRow row = rescaleRow(form, nodeBox, n1);

  // Index the rescaled coefficients for fast lookup.
  std::map<std::pair<int, int>, double> q;
  std::map<int, double> a, b;
  for (const auto& t : row.qTerms) q[{t.i, t.j}] = t.value;
  for (const auto& [i, v] : row.aLin) a[i] = v;
  for (const auto& [j, v] : row.bLin) b[j] = v;

  // Live variables by combined index; pair-touched ones are not singletons.
  std::set<int> inPair;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& t : row.qTerms) {
    pairs.emplace_back(t.i, t.j);
    inPair.insert(t.i);
    inPair.insert(n1 + t.j);
  }
  std::vector<int> allVars, singles;
  for (int i : row.liveX) allVars.push_back(i);
  for (int j : row.liveY) allVars.push_back(n1 + j);
  std::sort(allVars.begin(), allVars.end());
  for (int v : allVars)
    if (!inPair.count(v)) singles.push_back(v);

  if (allVars.empty()) {
    result.infeasible =
        row.constant < bandLo - 1e-9 || row.constant > bandHi + 1e-9;
    return result;
  }

  // Piece count guard before enumeration.
  const auto pow2 = [](int k) -> double { return std::ldexp(1.0, k); };
  double count = 0;
  const int nLive = static_cast<int>(allVars.size());
  count += static_cast<double>(pairs.size()) * pow2(nLive - 2);
  count += static_cast<double>(singles.size()) * pow2(nLive - 1);
  if (count > cap) {
    result.fallback = true;
    return result;
  }

  // Shared enumeration over endpoint assignments of "others".
  auto forAssignments = [&](const std::vector<int>& others, auto&& emit) {
    const int k = static_cast<int>(others.size());
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<std::pair<int, double>> fixed;
      fixed.reserve(k);
      for (int t = 0; t < k; ++t)
        fixed.emplace_back(others[t], (mask >> t) & 1u ? 1.0 : 0.0);
      emit(fixed);
    }
  };

  auto valueOf = [](const std::vector<std::pair<int, double>>& fixed, int v) {
    for (const auto& [u, val] : fixed)
      if (u == v) return val;
    return 0.0;
  };

  bool anyFeasible = false;

  for (const auto& [i0, j0] : pairs) {
    std::vector<int> others;
    for (int v : allVars)
      if (v != i0 && v != n1 + j0) others.push_back(v);
    forAssignments(others, [&](const std::vector<std::pair<int, double>>& fx) {
      BandSet set;
      set.lo = bandLo;
      set.hi = bandHi;
      set.q = q.count({i0, j0}) ? q[{i0, j0}] : 0.0;
      set.a = a.count(i0) ? a[i0] : 0.0;
      set.b = b.count(j0) ? b[j0] : 0.0;
      set.c = row.constant;
      for (const auto& [v, val] : fx) {
        if (v < n1) {
          set.c += (a.count(v) ? a[v] : 0.0) * val;
          if (q.count({v, j0})) set.b += q[{v, j0}] * val;
        } else {
          const int j = v - n1;
          set.c += (b.count(j) ? b[j] : 0.0) * val;
          if (q.count({i0, j})) set.a += q[{i0, j}] * val;
        }
      }
      // Cross terms between two fixed variables.
      for (const auto& [u, uv] : fx) {
        if (u >= n1 || uv == 0.0) continue;
        for (const auto& [v, vv] : fx) {
          if (v < n1 || vv == 0.0) continue;
          auto it = q.find({u, v - n1});
          if (it != q.end()) set.c += it->second * uv * vv;
        }
      }
      RegionApprox approx = outerApproximateRegion(set);
      if (!approx.feasible) return;
      HullPiece piece;
      piece.isPair = true;
      piece.xVar = i0;
      piece.yVar = j0;
      piece.fixedAt = fx;
      piece.set = set;
      piece.cuts = std::move(approx.cuts);
      anyFeasible = true;
      result.pieces.push_back(std::move(piece));
    });
  }

  for (int f : singles) {
    std::vector<int> others;
    for (int v : allVars)
      if (v != f) others.push_back(v);
    const bool isX = f < n1;
    forAssignments(others, [&](const std::vector<std::pair<int, double>>& fx) {
      // Row restricted to the free variable: coef * v + cc in [lo, hi].
      double coef =
          isX ? (a.count(f) ? a[f] : 0.0) : (b.count(f - n1) ? b[f - n1] : 0.0);
      double cc = row.constant;
      for (const auto& [v, val] : fx)
        cc += (v < n1 ? (a.count(v) ? a[v] : 0.0)
                      : (b.count(v - n1) ? b[v - n1] : 0.0)) *
              val;
      for (const auto& t : row.qTerms) {
        const double xv = (t.i == f && isX) ? -1.0 : valueOf(fx, t.i);
        const double yv =
            (n1 + t.j == f && !isX) ? -1.0 : valueOf(fx, n1 + t.j);
        if (xv >= 0.0 && yv >= 0.0) {
          cc += t.value * xv * yv;
        } else if (xv < 0.0) {
          coef += t.value * yv;  // free x times fixed y
        } else {
          coef += t.value * xv;  // fixed x times free y
        }
      }
      double vLo = 0.0, vHi = 1.0;
      if (std::abs(coef) < kZeroCoef) {
        if (cc < bandLo - 1e-9 || cc > bandHi + 1e-9) return;
      } else {
        double u = (bandLo - cc) / coef, w = (bandHi - cc) / coef;
        if (u > w) std::swap(u, w);
        vLo = std::max(0.0, u);
        vHi = std::min(1.0, w);
        if (vHi < vLo - 1e-12) return;
        vHi = std::max(vHi, vLo);
      }
      HullPiece piece;
      piece.isPair = false;
      piece.freeIsX = isX;
      piece.freeVar = f;
      piece.freeLo = vLo;
      piece.freeHi = vHi;
      piece.fixedAt = fx;
      anyFeasible = true;
      result.pieces.push_back(std::move(piece));
    });
  }

  result.infeasible = !anyFeasible;
  return result;
}

}  // namespace bbp
