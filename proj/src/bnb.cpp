#include "bbp/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "bbp/branching.hpp"
#include "bbp/lp.hpp"
#include "bbp/relax.hpp"

namespace bbp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SideLP {
  LPProblem lp;
  double offset = 0.0;
  std::vector<int> freeCols;  // per free variable
};

/// LP in the non-fixed side plus residual channels, with the fixed side
/// substituted in. fixedIsX: x is held at `point`'s x block.
SideLP buildSideLP(const BBPInstance& inst, const Eigen::VectorXd& point,
                   bool fixedIsX) {
  SideLP out;
  const int n1 = inst.n1, n2 = inst.n2;
  const int nFree = fixedIsX ? n2 : n1;
  const int base = fixedIsX ? n1 : 0;
  auto fixedVal = [&](int idx) {
    return fixedIsX ? point[idx] : point[n1 + idx];
  };

  // Objective split: free-side coefficients plus a constant offset.
  std::vector<double> freeCost(nFree, 0.0);
  out.offset = inst.objective.constant;
  for (const auto& [i, v] : inst.objective.aLin) {
    if (fixedIsX)
      out.offset += v * fixedVal(i);
    else
      freeCost[i] += v;
  }
  for (const auto& [j, v] : inst.objective.bLin) {
    if (fixedIsX)
      freeCost[j] += v;
    else
      out.offset += v * fixedVal(j);
  }
  for (const auto& t : inst.objective.qTerms) {
    if (fixedIsX)
      freeCost[t.j] += t.value * fixedVal(t.i);
    else
      freeCost[t.i] += t.value * fixedVal(t.j);
  }

  for (int v = 0; v < nFree; ++v)
    out.freeCols.push_back(out.lp.addVar(inst.lower[base + v],
                                         inst.upper[base + v], freeCost[v]));

  for (const auto& row : inst.rows) {
    std::vector<double> coef(nFree, 0.0);
    double cc = row.form.constant;
    for (const auto& [i, v] : row.form.aLin) {
      if (fixedIsX)
        cc += v * fixedVal(i);
      else
        coef[i] += v;
    }
    for (const auto& [j, v] : row.form.bLin) {
      if (fixedIsX)
        coef[j] += v;
      else
        cc += v * fixedVal(j);
    }
    for (const auto& t : row.form.qTerms) {
      if (fixedIsX)
        coef[t.j] += t.value * fixedVal(t.i);
      else
        coef[t.i] += t.value * fixedVal(t.j);
    }
    LPRow eq;
    eq.sense = '=';
    eq.rhs = -cc;
    for (int v = 0; v < nFree; ++v)
      if (coef[v] != 0.0) eq.coeffs.emplace_back(out.freeCols[v], coef[v]);
    if (row.zPlus)
      eq.coeffs.emplace_back(
          out.lp.addVar(0.0, row.zPlus->bound, row.zPlus->cost), -1.0);
    if (row.zMinus)
      eq.coeffs.emplace_back(
          out.lp.addVar(0.0, row.zMinus->bound, row.zMinus->cost), 1.0);
    out.lp.addRow(std::move(eq));
  }
  return out;
}

}  // namespace

FixedSideSolve solveWithSideFixed(const BBPInstance& inst,
                                  const Eigen::VectorXd& point,
                                  bool fixedIsX) {
  FixedSideSolve out;
  SideLP side = buildSideLP(inst, point, fixedIsX);
  const LPResult res = solveLP(side.lp);
  if (res.status != LPStatus::Optimal) return out;
  out.feasible = true;
  out.value = res.objective + side.offset;
  out.point = point;
  const int base = fixedIsX ? inst.n1 : 0;
  for (size_t v = 0; v < side.freeCols.size(); ++v)
    out.point[base + static_cast<int>(v)] = res.primal[side.freeCols[v]];
  return out;
}

std::optional<double> feasibleObjective(const BBPInstance& inst,
                                        const Eigen::VectorXd& point) {
  const Eigen::VectorXd x = point.head(inst.n1);
  const Eigen::VectorXd y = point.tail(inst.n2);
  double value = inst.objective.eval(x, y);
  for (const auto& row : inst.rows) {
    const double e = row.form.eval(x, y);
    const double up = row.zPlus ? row.zPlus->bound : 0.0;
    const double um = row.zMinus ? row.zMinus->bound : 0.0;
    if (e > up + 1e-7 || -e > um + 1e-7) return std::nullopt;
    if (e > 0 && row.zPlus) value += row.zPlus->cost * e;
    if (e < 0 && row.zMinus) value += row.zMinus->cost * (-e);
  }
  return value;
}

std::optional<std::pair<Eigen::VectorXd, double>> alternatingHeuristic(
    const BBPInstance& inst, const Eigen::VectorXd& start, int maxRounds) {
  Eigen::VectorXd point = start;
  std::optional<double> best = feasibleObjective(inst, point);
  for (int round = 0; round < maxRounds; ++round) {
    bool improved = false;
    for (bool fixedIsX : {true, false}) {
      SideLP side = buildSideLP(inst, point, fixedIsX);
      const LPResult res = solveLP(side.lp);
      if (res.status != LPStatus::Optimal) continue;
      Eigen::VectorXd trial = point;
      const int base = fixedIsX ? inst.n1 : 0;
      for (size_t v = 0; v < side.freeCols.size(); ++v)
        trial[base + static_cast<int>(v)] = res.primal[side.freeCols[v]];
      const auto val = feasibleObjective(inst, trial);
      if (val && (!best || *val < *best - 1e-12)) {
        best = val;
        point = trial;
        improved = true;
      } else if (val && !best) {
        best = val;
        point = trial;
        improved = true;
      }
    }
    if (!improved) break;
  }
  if (!best) return std::nullopt;
  return std::make_pair(point, *best);
}

std::pair<double, double> updateGlobalBound(
    const std::vector<double>& openBounds, std::optional<double> incumbent) {
  double dual;
  if (openBounds.empty()) {
    dual = incumbent ? *incumbent : -kInf;
  } else {
    dual = *std::min_element(openBounds.begin(), openBounds.end());
  }
  if (!incumbent) return {dual, kInf};
  const double gap = (*incumbent - dual) / std::max(std::abs(*incumbent), 1e-9);
  return {dual, std::max(0.0, gap)};
}

namespace {

struct Node {
  long id = 0;
  long parent = -1;
  Box box{Eigen::VectorXd(), Eigen::VectorXd()};
  double bound = -kInf;
  int depth = 0;
};

struct NodeOrder {
  bool operator()(const std::pair<double, long>& a,
                  const std::pair<double, long>& b) const {
    if (a.first != b.first) return a.first > b.first;  // min-bound first
    return a.second > b.second;                        // then FIFO by id
  }
};

}  // namespace

SolveResult solve(const BBPInstance& inst, const BnBConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  SolveResult result;
  const InteractionGraph graph = buildGraph(inst);
  RelaxConfig relaxCfg;
  relaxCfg.hull = config.relaxation != "mccormick";
  relaxCfg.pieceCap = config.pieceCap;

  std::map<long, Node> nodes;
  std::priority_queue<std::pair<double, long>,
                      std::vector<std::pair<double, long>>, NodeOrder>
      open;
  long nextId = 0;
  {
    Node root;
    root.id = nextId++;
    root.box = inst.box();
    nodes[root.id] = root;
    open.push({root.bound, root.id});
  }

  std::optional<double> incumbent;
  Eigen::VectorXd incumbentPoint;
  double dual = -kInf;
  std::string termination = "exhausted";

  auto pruneThreshold = [&]() {
    return *incumbent - 1e-7 * std::max(1.0, std::abs(*incumbent));
  };

  auto tryIncumbent = [&](const Eigen::VectorXd& point) {
    const auto val = alternatingHeuristic(inst, point, config.heuristicRounds);
    if (val && (!incumbent || val->second < *incumbent)) {
      incumbent = val->second;
      incumbentPoint = val->first;
    }
  };

  const int branchFrom = config.branchY ? inst.n1 : 0;
  const int branchTo =
      config.branchY ? inst.n1 + inst.n2 : inst.n1;

  while (!open.empty()) {
    if (result.nodes >= config.nodeLimit) {
      termination = "nodeLimit";
      break;
    }
    if (elapsed() > config.timeLimitSec) {
      termination = "timeLimit";
      break;
    }
    const long id = open.top().second;
    open.pop();
    Node node = nodes[id];
    nodes.erase(id);

    if (incumbent && node.bound >= pruneThreshold()) {
      // Best-bound order: every remaining node is at least as bad.
      termination = "gapTol";
      dual = std::max(dual, *incumbent);
      break;
    }

    NodeRelaxation rel =
        buildNodeRelaxation(inst, graph, node.box, relaxCfg);
    ++result.nodes;
    if (rel.infeasible) {
      result.log.push_back({node.id, node.bound, "infeasible", -1, 0.0, dual});
      continue;
    }
    const LPResult lpRes = solveLP(rel.lp);
    if (lpRes.status == LPStatus::Infeasible) {
      result.log.push_back({node.id, node.bound, "infeasible", -1, 0.0, dual});
      continue;
    }
    double bound = node.bound;
    Eigen::VectorXd xBar = Eigen::VectorXd::Zero(inst.n1);
    Eigen::VectorXd yBar = Eigen::VectorXd::Zero(inst.n2);
    if (lpRes.status == LPStatus::Optimal) {
      bound = std::max(bound, lpRes.objective + rel.objOffset);
      for (int i = 0; i < inst.n1; ++i) xBar[i] = lpRes.primal[rel.xCols[i]];
      for (int j = 0; j < inst.n2; ++j) yBar[j] = lpRes.primal[rel.yCols[j]];
    } else {
      // Numerical trouble: keep the inherited bound, use the box midpoint.
      for (int i = 0; i < inst.n1; ++i)
        xBar[i] = 0.5 * (node.box.lo[i] + node.box.hi[i]);
      for (int j = 0; j < inst.n2; ++j)
        yBar[j] = 0.5 * (node.box.lo[inst.n1 + j] + node.box.hi[inst.n1 + j]);
    }

    // Global dual bound: this node against the rest of the queue.
    double queueMin = bound;
    if (!open.empty()) queueMin = std::min(queueMin, open.top().first);
    const bool dualImproved = queueMin > dual + 1e-12;
    dual = std::max(dual, queueMin);

    if (incumbent && bound >= pruneThreshold()) {
      result.log.push_back({node.id, bound, "pruned", -1, 0.0, dual});
      continue;
    }

    if (node.id == 0 || dualImproved || config.heuristicEveryNode) {
      Eigen::VectorXd start(inst.n1 + inst.n2);
      start << xBar, yBar;
      tryIncumbent(start);
      if (node.id == 0) {
        // A second start at the box centre often escapes relaxation vertices
        // where the alternating heuristic stalls.
        tryIncumbent(0.5 * (node.box.lo + node.box.hi));
      }
    }

    if (incumbent) {
      const double gap =
          (*incumbent - dual) / std::max(std::abs(*incumbent), 1e-9);
      if (gap <= config.gapTol) {
        result.log.push_back({node.id, bound, "gapTol", -1, 0.0, dual});
        termination = "gapTol";
        break;
      }
      if (bound >= pruneThreshold()) {
        result.log.push_back({node.id, bound, "pruned", -1, 0.0, dual});
        continue;
      }
    }

    // Branch.
    BranchDecision decision;
    if (config.rule == "alg1") {
      std::vector<DisjunctionStat> stats;
      auto harvest = [&](const std::vector<HullPiece>& pieces) {
        for (const auto& piece : pieces)
          if (auto st = analyzeDisjunction(piece, node.box, inst.n1,
                                           config.gamma))
            stats.push_back(*st);
      };
      if (relaxCfg.hull) {
        for (const auto& block : rel.blocks) harvest(block.pieces);
      } else {
        for (size_t k = 0; k < inst.rows.size(); ++k) {
          const auto [uPlus, uMinus] =
              tightenZBounds(inst.rows[k], node.box, inst.n1);
          const FixingResult fx =
              enumerateFixings(inst.rows[k].form, node.box, inst.n1, -uMinus,
                               uPlus, config.pieceCap);
          if (!fx.fallback) harvest(fx.pieces);
        }
      }
      decision = algorithm1(stats, node.box, inst.n1, config.K, config.eps1,
                            config.eps2);
    } else if (config.rule == "range-bisect") {
      decision.rule = "bisection";
      decision.var = branchFrom;
      double bw = -1.0;
      for (int v = branchFrom; v < branchTo; ++v) {
        const double w = node.box.hi[v] - node.box.lo[v];
        if (w > bw + 1e-15) {
          bw = w;
          decision.var = v;
        }
      }
      decision.point =
          0.5 * (node.box.lo[decision.var] + node.box.hi[decision.var]);
    } else {
      std::vector<std::pair<std::pair<int, int>, double>> wValues;
      if (lpRes.status == LPStatus::Optimal)
        for (const auto& [edge, col] : rel.wCols)
          wValues.push_back({edge, lpRes.primal[col]});
      decision.var = gapErrorSelect(xBar, yBar, wValues, node.box, inst.n1,
                                    config.branchY);
      const std::string pointRule = config.rule == "gap-maxdev" ? "maxdev"
                                    : config.rule == "gap-incumbent"
                                        ? "incumbent"
                                        : "bisect";
      const double relaxVal = decision.var < inst.n1
                                  ? xBar[decision.var]
                                  : yBar[decision.var - inst.n1];
      std::optional<double> incVal;
      if (incumbent && incumbentPoint.size() > decision.var)
        incVal = incumbentPoint[decision.var];
      decision.point =
          branchPoint(pointRule, decision.var, node.box, relaxVal, incVal);
      decision.rule = pointRule;
    }

    // Guard against vanishing domains.
    {
      double w = node.box.hi[decision.var] - node.box.lo[decision.var];
      if (w < 1e-9) {
        int widest = branchFrom;
        double bw = -1.0;
        for (int v = branchFrom; v < branchTo; ++v) {
          const double wv = node.box.hi[v] - node.box.lo[v];
          if (wv > bw) {
            bw = wv;
            widest = v;
          }
        }
        if (bw < 1e-9) {
          // Box is a point on the branching side: nothing left to split.
          result.log.push_back({node.id, bound, "atom", -1, 0.0, dual});
          continue;
        }
        decision.var = widest;
        decision.point =
            0.5 * (node.box.lo[widest] + node.box.hi[widest]);
        decision.rule = "bisection";
      }
      const double lo = node.box.lo[decision.var];
      const double hi = node.box.hi[decision.var];
      const double pad = 1e-9 * std::max(1.0, hi - lo);
      if (decision.point <= lo + pad || decision.point >= hi - pad)
        decision.point = 0.5 * (lo + hi);
    }

    result.log.push_back(
        {node.id, bound, decision.rule, decision.var, decision.point, dual});

    for (int side = 0; side < 2; ++side) {
      Node child;
      child.id = nextId++;
      child.parent = node.id;
      child.box = node.box;
      child.depth = node.depth + 1;
      child.bound = bound;
      if (side == 0)
        child.box.hi[decision.var] = decision.point;
      else
        child.box.lo[decision.var] = decision.point;
      nodes[child.id] = child;
      open.push({child.bound, child.id});
    }
  }

  if (open.empty() && termination == "exhausted" && incumbent)
    dual = *incumbent;
  if (incumbent) dual = std::min(dual, *incumbent);

  result.hasIncumbent = incumbent.has_value();
  if (incumbent) {
    result.primal = *incumbent;
    result.primalPoint = incumbentPoint;
    result.dual = dual;
    result.gap = std::max(
        0.0, (*incumbent - dual) / std::max(std::abs(*incumbent), 1e-9));
  } else {
    result.primal = kInf;
    result.dual = dual;
    result.gap = kInf;
  }
  result.wallSeconds = elapsed();
  result.termination = termination;
  return result;
}

}  // namespace bbp
