#include "bbp/relax.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bbp/interval.hpp"

namespace bbp {

std::vector<LPRow> mcCormickCuts(int xCol, int yCol, int wCol, double xl,
                                 double xu, double yl, double yu) {
  std::vector<LPRow> rows;
  auto add = [&](double yc, double xc, double rhs, char sense) {
    LPRow r;
    r.coeffs = {{wCol, 1.0}, {xCol, -yc}, {yCol, -xc}};
    r.sense = sense;
    r.rhs = rhs;
    rows.push_back(std::move(r));
  };
  add(yl, xl, -xl * yl, '>');  // w >= yl*x + xl*y - xl*yl
  add(yu, xu, -xu * yu, '>');  // w >= yu*x + xu*y - xu*yu
  add(yl, xu, -xu * yl, '<');  // w <= yl*x + xu*y - xu*yl
  add(yu, xl, -xl * yu, '<');  // w <= yu*x + xl*y - xl*yu
  return rows;
}

std::pair<double, double> tightenZBounds(const BilinearRow& row,
                                         const Box& nodeBox, int n1) {
  const Interval range = rangeOver(row.form, nodeBox, n1);
  double uPlus = 0.0, uMinus = 0.0;
  if (row.zPlus)
    uPlus = std::min(row.zPlus->bound, std::max(0.0, range.hi));
  if (row.zMinus)
    uMinus = std::min(row.zMinus->bound, std::max(0.0, -range.lo));
  return {uPlus, uMinus};
}

namespace {

/// Builds one row's disjunctive hull block on top of the shared columns.
void appendHullBlock(NodeRelaxation& rel, const BBPInstance& inst, int rowIdx,
                     const std::vector<HullPiece>& pieces) {
  LPProblem& lp = rel.lp;
  const Box& box = rel.nodeBox;
  const int n1 = inst.n1;

  const RescaledRow live = rescaleRow(inst.rows[rowIdx].form, box, n1);
  std::vector<int> liveVars;
  for (int i : live.liveX) liveVars.push_back(i);
  for (int j : live.liveY) liveVars.push_back(n1 + j);

  auto loOf = [&](int v) { return box.lo[v]; };
  auto widthOf = [&](int v) { return box.hi[v] - box.lo[v]; };
  auto origCol = [&](int v) { return v < n1 ? rel.xCols[v] : rel.yCols[v - n1]; };

  // Single-piece shortcut: the block degenerates to the piece itself, written
  // directly on the shared columns (fixed variables are pinned).
  if (pieces.size() == 1) {
    const HullPiece& p = pieces[0];
    for (const auto& [v, val] : p.fixedAt) {
      LPRow r;
      r.coeffs = {{origCol(v), 1.0}};
      r.rhs = loOf(v) + widthOf(v) * val;
      lp.addRow(std::move(r));
    }
    if (p.isPair) {
      const double lx = loOf(p.xVar), wx = widthOf(p.xVar);
      const double ly = loOf(n1 + p.yVar), wy = widthOf(n1 + p.yVar);
      const int wc = rel.wCols.at({p.xVar, p.yVar});
      for (const Cut& cut : p.cuts) {
        // Substitute the unit-box coordinates into the cut.
        LPRow r;
        const double cwS = cut.cw / (wx * wy);
        r.coeffs = {{origCol(p.xVar), cut.cx / wx - cwS * ly},
                    {origCol(n1 + p.yVar), cut.cy / wy - cwS * lx},
                    {wc, cwS}};
        r.sense = '>';
        r.rhs = cut.rhs + cut.cx * lx / wx + cut.cy * ly / wy - cwS * lx * ly;
        lp.addRow(std::move(r));
      }
    } else {
      const int v = p.freeVar;
      LPRow lo;
      lo.coeffs = {{origCol(v), 1.0}};
      lo.sense = '>';
      lo.rhs = loOf(v) + widthOf(v) * p.freeLo;
      lp.addRow(std::move(lo));
      LPRow hi;
      hi.coeffs = {{origCol(v), 1.0}};
      hi.sense = '<';
      hi.rhs = loOf(v) + widthOf(v) * p.freeHi;
      lp.addRow(std::move(hi));
    }
    return;
  }

  struct PieceCols {
    int lambda = -1;
    int xCopy = -1, yCopy = -1, wCopy = -1;  // pair pieces
    int vCopy = -1;                          // singleton pieces (interval)
  };
  std::vector<PieceCols> cols(pieces.size());

  LPRow lambdaSum;
  lambdaSum.sense = '=';
  lambdaSum.rhs = 1.0;

  for (size_t p = 0; p < pieces.size(); ++p) {
    const HullPiece& piece = pieces[p];
    PieceCols& pc = cols[p];
    pc.lambda = lp.addVar(0.0, 1.0, 0.0);
    lambdaSum.coeffs.emplace_back(pc.lambda, 1.0);
    auto copyVar = [&]() { return lp.addVar(0.0, 1.0, 0.0); };
    auto capByLambda = [&](int col) {
      LPRow r;
      r.coeffs = {{col, 1.0}, {pc.lambda, -1.0}};
      r.sense = '<';
      lp.addRow(std::move(r));
    };
    if (piece.isPair) {
      pc.xCopy = copyVar();
      pc.yCopy = copyVar();
      pc.wCopy = copyVar();
      capByLambda(pc.xCopy);
      capByLambda(pc.yCopy);
      capByLambda(pc.wCopy);
      for (const Cut& cut : piece.cuts) {
        LPRow r;
        r.coeffs = {{pc.xCopy, cut.cx},
                    {pc.yCopy, cut.cy},
                    {pc.wCopy, cut.cw},
                    {pc.lambda, -cut.rhs}};
        r.sense = '>';
        lp.addRow(std::move(r));
      }
    } else if (piece.freeHi - piece.freeLo > 1e-12) {
      pc.vCopy = copyVar();
      LPRow lo;
      lo.coeffs = {{pc.vCopy, 1.0}, {pc.lambda, -piece.freeLo}};
      lo.sense = '>';
      lp.addRow(std::move(lo));
      LPRow hi;
      hi.coeffs = {{pc.vCopy, 1.0}, {pc.lambda, -piece.freeHi}};
      hi.sense = '<';
      lp.addRow(std::move(hi));
    }
  }
  lp.addRow(std::move(lambdaSum));

  // Unit-coordinate value of live variable v inside piece p: either a copy
  // column (coefficient 1) or a multiple of lambda.
  auto unitExpr = [&](size_t p, int v) -> std::pair<int, double> {
    const HullPiece& piece = pieces[p];
    const PieceCols& pc = cols[p];
    if (piece.isPair) {
      if (v == piece.xVar) return {pc.xCopy, 1.0};
      if (v == n1 + piece.yVar) return {pc.yCopy, 1.0};
    } else if (v == piece.freeVar) {
      if (pc.vCopy >= 0) return {pc.vCopy, 1.0};
      return {pc.lambda, piece.freeLo};  // point piece
    }
    for (const auto& [u, val] : piece.fixedAt)
      if (u == v) return {pc.lambda, val};
    return {pc.lambda, 0.0};
  };

  // Aggregate original variables: x_v = sum_p (lo + width * unit_p).
  for (int v : liveVars) {
    std::map<int, double> coef;
    coef[origCol(v)] += 1.0;
    for (size_t p = 0; p < pieces.size(); ++p) {
      coef[cols[p].lambda] -= loOf(v);
      auto [col, mult] = unitExpr(p, v);
      coef[col] -= widthOf(v) * mult;
    }
    LPRow r;
    r.sense = '=';
    for (const auto& [col, val] : coef)
      if (val != 0.0) r.coeffs.emplace_back(col, val);
    lp.addRow(std::move(r));
  }

  // Aggregate products for every live pair of the row:
  // w_ij = lx*ly + lx*wy*uy + ly*wx*ux + wx*wy*(ux*uy).
  for (int i : live.liveX) {
    for (int j : live.liveY) {
      auto it = rel.wCols.find({i, j});
      if (it == rel.wCols.end()) continue;
      const double lx = loOf(i), wx = widthOf(i);
      const double ly = loOf(n1 + j), wy = widthOf(n1 + j);
      std::map<int, double> coef;
      coef[it->second] += 1.0;
      for (size_t p = 0; p < pieces.size(); ++p) {
        const HullPiece& piece = pieces[p];
        const PieceCols& pc = cols[p];
        coef[pc.lambda] -= lx * ly;
        auto [xc, xm] = unitExpr(p, i);
        auto [yc, ym] = unitExpr(p, n1 + j);
        coef[xc] -= ly * wx * xm;
        coef[yc] -= lx * wy * ym;
        // Unit product term.
        if (piece.isPair && i == piece.xVar && j == piece.yVar) {
          coef[pc.wCopy] -= wx * wy;
        } else if (xc == pc.lambda) {
          coef[yc] -= wx * wy * xm * ym;  // x side is a lambda multiple
        } else if (yc == pc.lambda) {
          coef[xc] -= wx * wy * xm * ym;  // y side is a lambda multiple
        } else {
          // Both sides free without a shared product copy cannot happen:
          // free variables are exactly the U-members of the piece.
          coef[pc.lambda] -= 0.0;
        }
      }
      LPRow r;
      r.sense = '=';
      for (const auto& [col, val] : coef)
        if (val != 0.0) r.coeffs.emplace_back(col, val);
      lp.addRow(std::move(r));
    }
  }
}

}  // namespace

NodeRelaxation buildNodeRelaxation(const BBPInstance& inst,
                                   const InteractionGraph& graph,
                                   const Box& nodeBox,
                                   const RelaxConfig& config) {
  NodeRelaxation rel;
  rel.n1 = inst.n1;
  rel.n2 = inst.n2;
  rel.nodeBox = nodeBox;
  rel.objOffset = inst.objective.constant;
  LPProblem& lp = rel.lp;

  // Structural columns.
  std::map<int, double> d1, d2;
  for (const auto& [i, v] : inst.objective.aLin) d1[i] = v;
  for (const auto& [j, v] : inst.objective.bLin) d2[j] = v;
  for (int i = 0; i < inst.n1; ++i)
    rel.xCols.push_back(
        lp.addVar(nodeBox.lo[i], nodeBox.hi[i], d1.count(i) ? d1[i] : 0.0));
  for (int j = 0; j < inst.n2; ++j)
    rel.yCols.push_back(lp.addVar(nodeBox.lo[inst.n1 + j],
                                  nodeBox.hi[inst.n1 + j],
                                  d2.count(j) ? d2[j] : 0.0));

  // Product columns: global edges plus every per-row variable pair.
  std::set<std::pair<int, int>> wSet(graph.edges.begin(), graph.edges.end());
  for (const auto& rg : graph.perRow)
    wSet.insert(rg.pairs.begin(), rg.pairs.end());
  std::map<std::pair<int, int>, double> objQ;
  for (const auto& t : inst.objective.qTerms) objQ[{t.i, t.j}] = t.value;
  for (const auto& [i, j] : wSet) {
    const double xl = nodeBox.lo[i], xu = nodeBox.hi[i];
    const double yl = nodeBox.lo[inst.n1 + j], yu = nodeBox.hi[inst.n1 + j];
    const double corners[4] = {xl * yl, xl * yu, xu * yl, xu * yu};
    const int col = lp.addVar(*std::min_element(corners, corners + 4),
                              *std::max_element(corners, corners + 4),
                              objQ.count({i, j}) ? objQ[{i, j}] : 0.0);
    rel.wCols[{i, j}] = col;
    for (auto& row :
         mcCormickCuts(rel.xCols[i], rel.yCols[j], col, xl, xu, yl, yu))
      lp.addRow(std::move(row));
  }

  // Residual channels and row equalities in w-space.
  rel.zPlusCols.assign(inst.rows.size(), -1);
  rel.zMinusCols.assign(inst.rows.size(), -1);
  for (size_t k = 0; k < inst.rows.size(); ++k) {
    const BilinearRow& row = inst.rows[k];
    const auto [uPlus, uMinus] = tightenZBounds(row, nodeBox, inst.n1);
    if (row.zPlus)
      rel.zPlusCols[k] = lp.addVar(0.0, uPlus, row.zPlus->cost);
    if (row.zMinus)
      rel.zMinusCols[k] = lp.addVar(0.0, uMinus, row.zMinus->cost);

    LPRow eq;
    eq.sense = '=';
    eq.rhs = -row.form.constant;
    std::map<int, double> coef;
    for (const auto& t : row.form.qTerms)
      coef[rel.wCols.at({t.i, t.j})] += t.value;
    for (const auto& [i, v] : row.form.aLin) coef[rel.xCols[i]] += v;
    for (const auto& [j, v] : row.form.bLin) coef[rel.yCols[j]] += v;
    if (rel.zPlusCols[k] >= 0) coef[rel.zPlusCols[k]] -= 1.0;
    if (rel.zMinusCols[k] >= 0) coef[rel.zMinusCols[k]] += 1.0;
    for (const auto& [col, val] : coef)
      if (val != 0.0) eq.coeffs.emplace_back(col, val);
    lp.addRow(std::move(eq));
  }

  // Hull blocks.
  if (config.hull) {
    for (size_t k = 0; k < inst.rows.size(); ++k) {
      const auto [uPlus, uMinus] = tightenZBounds(inst.rows[k], nodeBox,
                                                  inst.n1);
      FixingResult fx = enumerateFixings(inst.rows[k].form, nodeBox, inst.n1,
                                         -uMinus, uPlus, config.pieceCap);
      RowBlock block;
      block.row = static_cast<int>(k);
      block.fallback = fx.fallback;
      if (fx.infeasible) {
        rel.infeasible = true;
        rel.blocks.push_back(std::move(block));
        return rel;
      }
      if (!fx.fallback && !fx.pieces.empty())
        appendHullBlock(rel, inst, static_cast<int>(k), fx.pieces);
      block.pieces = std::move(fx.pieces);
      rel.blocks.push_back(std::move(block));
    }
  }
  return rel;
}

}  // namespace bbp
