#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbp/bnb.hpp"
#include "bbp/figure.hpp"
#include "bbp/generator.hpp"
#include "bbp/io.hpp"
#include "bbp/lp.hpp"
#include "bbp/oracle.hpp"
#include "bbp/relax.hpp"
#include "bbp/scaling.hpp"

namespace {

using nlohmann::json;

void writeOut(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text << std::endl;
  } else {
    std::ofstream out(outPath);
    out << text << "\n";
  }
}

json configToJson(const bbp::BnBConfig& c) {
  return json{{"relaxation", c.relaxation},
              {"branch", c.rule},
              {"timeLimit", c.timeLimitSec},
              {"nodeLimit", c.nodeLimit},
              {"gapTol", c.gapTol},
              {"K", c.K},
              {"eps1", c.eps1},
              {"eps2", c.eps2},
              {"gamma", c.gamma},
              {"pieceCap", c.pieceCap},
              {"seed", c.seed},
              {"parallel", c.parallel},
              {"branchY", c.branchY}};
}

double solveRoot(const bbp::BBPInstance& inst, bool hull, int pieceCap,
                 double& seconds, bool& ok) {
  const auto t0 = std::chrono::steady_clock::now();
  bbp::RelaxConfig cfg;
  cfg.hull = hull;
  cfg.pieceCap = pieceCap;
  const auto graph = bbp::buildGraph(inst);
  const auto rel = bbp::buildNodeRelaxation(inst, graph, inst.box(), cfg);
  double value = 0.0;
  ok = false;
  if (!rel.infeasible) {
    const auto res = bbp::solveLP(rel.lp);
    if (res.status == bbp::LPStatus::Optimal) {
      value = res.objective + rel.objOffset;
      ok = true;
    }
  }
  seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global solver for bipartite bilinear programs"};
  app.require_subcommand(1);

  std::string instanceFile, outFile;
  bbp::BnBConfig cfg;

  auto addRunFlags = [&](CLI::App* cmd) {
    cmd->add_option("instance", instanceFile, "instance file")->required();
    cmd->add_option("--relaxation", cfg.relaxation,
                    "hull | mccormick");
    cmd->add_option("--branch", cfg.rule,
                    "alg1 | gap-maxdev | gap-incumbent | gap-bisect | "
                    "range-bisect");
    cmd->add_option("--time-limit", cfg.timeLimitSec, "seconds");
    cmd->add_option("--node-limit", cfg.nodeLimit, "max nodes");
    cmd->add_option("--gap-tol", cfg.gapTol, "relative gap tolerance");
    cmd->add_option("--K", cfg.K, "branching grid cells");
    cmd->add_option("--eps1", cfg.eps1, "relevance threshold");
    cmd->add_option("--eps2", cfg.eps2, "area threshold");
    cmd->add_option("--gamma", cfg.gamma, "one-branch interval factor");
    cmd->add_option("--piece-cap", cfg.pieceCap, "max hull pieces per row");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_flag("--parallel", cfg.parallel, "reserved");
    cmd->add_flag("--branch-y", cfg.branchY, "branch on y-variables");
    cmd->add_option("--out", outFile, "write the result document here");
  };

  auto* cmdSolve = app.add_subcommand("solve", "branch-and-bound solve");
  addRunFlags(cmdSolve);

  auto* cmdRoot =
      app.add_subcommand("root", "root relaxation comparison (hull vs "
                                 "McCormick)");
  cmdRoot->add_option("instance", instanceFile, "instance file")->required();
  int rootPieceCap = 256;
  cmdRoot->add_option("--piece-cap", rootPieceCap, "max hull pieces per row");
  cmdRoot->add_option("--out", outFile, "write the result document here");

  double gridStep = 1e-3;
  auto* cmdOracle = app.add_subcommand("oracle", "grid brute-force optimum");
  cmdOracle->add_option("instance", instanceFile, "instance file")->required();
  cmdOracle->add_option("--grid", gridStep, "x grid step");
  cmdOracle->add_option("--out", outFile, "write the result document here");

  std::vector<int> shape;  // n1 n2 rows
  double density = 1.0, noise = 0.0;
  unsigned genSeed = 0;
  auto* cmdGen = app.add_subcommand("generate", "random residual instance");
  cmdGen->add_option("--shape", shape, "n1 n2 rows")->expected(3)->required();
  cmdGen->add_option("--density", density, "bilinear terms per row");
  cmdGen->add_option("--noise", noise, "constant-noise variance fraction");
  cmdGen->add_option("--seed", genSeed, "random seed");
  cmdGen->add_option("--out", outFile, "write the instance here");

  std::string feFile;
  double feNoise = 0.0;
  unsigned feSeed = 0;
  auto* cmdFE = app.add_subcommand(
      "from-fe", "convert a finite-element model-updating input");
  cmdFE->add_option("input", feFile, "FE file")->required();
  cmdFE->add_option("--noise", feNoise, "measurement noise fraction");
  cmdFE->add_option("--seed", feSeed, "noise seed");
  cmdFE->add_option("--out", outFile, "write the instance here");

  double fq = 1, fa = 0, fb = 0, fc = -0.25, flo = 0, fhi = 0;
  auto* cmdFig = app.add_subcommand("figure-data",
                                    "CSV geometry dump of a two-variable set");
  cmdFig->add_option("--q", fq, "bilinear coefficient");
  cmdFig->add_option("--a", fa, "x coefficient");
  cmdFig->add_option("--b", fb, "y coefficient");
  cmdFig->add_option("--c", fc, "constant");
  cmdFig->add_option("--lo", flo, "residual band lower end");
  cmdFig->add_option("--hi", fhi, "residual band upper end");
  cmdFig->add_option("--out", outFile, "write the CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmdSolve->parsed()) {
      const bbp::BBPInstance inst = bbp::loadInstance(instanceFile);
      const bbp::SolveResult res = bbp::solve(inst, cfg);
      json doc;
      doc["config"] = configToJson(cfg);
      doc["termination"] = res.termination;
      doc["nodes"] = res.nodes;
      doc["wallSeconds"] = res.wallSeconds;
      doc["dual"] = res.dual;
      if (res.hasIncumbent) {
        doc["primal"] = res.primal;
        doc["gap"] = res.gap;
        doc["point"] = std::vector<double>(
            res.primalPoint.begin(), res.primalPoint.end());
      } else {
        doc["primal"] = nullptr;
        doc["gap"] = nullptr;
      }
      json log = json::array();
      for (const auto& e : res.log)
        log.push_back({{"id", e.id},
                       {"bound", e.bound},
                       {"action", e.action},
                       {"var", e.var},
                       {"point", e.point},
                       {"dual", e.dual}});
      doc["log"] = std::move(log);
      writeOut(doc.dump(2), outFile);
    } else if (cmdRoot->parsed()) {
      const bbp::BBPInstance inst = bbp::loadInstance(instanceFile);
      double tMc = 0, tHull = 0;
      bool okMc = false, okHull = false;
      const double vMc = solveRoot(inst, false, rootPieceCap, tMc, okMc);
      const double vHull = solveRoot(inst, true, rootPieceCap, tHull, okHull);
      json doc;
      doc["mccormick"] = {{"value", okMc ? json(vMc) : json(nullptr)},
                          {"seconds", tMc}};
      doc["hull"] = {{"value", okHull ? json(vHull) : json(nullptr)},
                     {"seconds", tHull}};
      doc["dominance"] = !(okMc && okHull) || vHull >= vMc - 1e-7;
      writeOut(doc.dump(2), outFile);
    } else if (cmdOracle->parsed()) {
      const bbp::BBPInstance inst = bbp::loadInstance(instanceFile);
      const bbp::OracleResult res = bbp::oracleSolve(inst, gridStep);
      json doc;
      doc["grid"] = gridStep;
      doc["gridPoints"] = res.gridPoints;
      if (res.feasible) {
        doc["value"] = res.value;
        doc["point"] =
            std::vector<double>(res.point.begin(), res.point.end());
      } else {
        doc["value"] = nullptr;
      }
      writeOut(doc.dump(2), outFile);
    } else if (cmdGen->parsed()) {
      bbp::GenShape gs;
      gs.n1 = shape[0];
      gs.n2 = shape[1];
      gs.rows = shape[2];
      gs.density = density;
      const bbp::BBPInstance inst = bbp::generateInstance(gs, noise, genSeed);
      writeOut(bbp::instanceToJson(inst), outFile);
    } else if (cmdFE->parsed()) {
      const bbp::FEInput fe = bbp::loadFE(feFile);
      const bbp::NormalizedInstance ni = bbp::fromFE(fe, feNoise, feSeed);
      writeOut(bbp::instanceToJson(ni.instance), outFile);
    } else if (cmdFig->parsed()) {
      bbp::BandSet set{fq, fa, fb, fc, flo, fhi};
      writeOut(bbp::figureDataCSV(set), outFile);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
