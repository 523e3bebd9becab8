#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "bbp/bnb.hpp"
#include "bbp/generator.hpp"
#include "bbp/oracle.hpp"

using namespace bbp;

namespace {

BBPInstance xyQuarterExact() {
  BBPInstance inst;
  inst.n1 = 1;
  inst.n2 = 1;
  inst.lower = Eigen::VectorXd::Zero(2);
  inst.upper = Eigen::VectorXd::Ones(2);
  BilinearRow row;
  row.form.qTerms = {{0, 0, 1.0}};
  row.form.constant = -0.25;
  inst.rows.push_back(row);
  inst.objective.aLin = {{0, 1.0}};
  inst.objective.bLin = {{0, 1.0}};
  return inst;
}

BBPInstance xyQuarterResidual() {
  auto inst = xyQuarterExact();
  inst.objective = BilinearForm{};
  inst.rows[0].zPlus = ResidualChannel{1.0, 1.0};
  inst.rows[0].zMinus = ResidualChannel{1.0, 1.0};
  return inst;
}

}  // namespace

TEST_CASE("xy = 0.25, min x+y solves to 1.0 within a handful of nodes") {
  BnBConfig cfg;
  const auto res = solve(xyQuarterExact(), cfg);
  REQUIRE(res.hasIncumbent);
  CHECK(res.primal == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.gap <= 1e-6);
  CHECK(res.nodes <= 5);
  CHECK(res.primalPoint[0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(res.primalPoint[1] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("infeasible instance terminates exhausted without incumbent") {
  auto inst = xyQuarterExact();
  inst.rows[0].form.constant = -2.0;  // xy = 2 misses the box
  BnBConfig cfg;
  const auto res = solve(inst, cfg);
  CHECK(!res.hasIncumbent);
  CHECK(res.termination == "exhausted");
}

TEST_CASE("node limit 1 terminates with reason nodeLimit") {
  GenShape shape{2, 3, 3, 1.5};
  const auto inst = generateInstance(shape, 0.6, 3);
  BnBConfig cfg;
  cfg.nodeLimit = 1;
  cfg.gapTol = 1e-12;
  const auto res = solve(inst, cfg);
  CHECK((res.termination == "nodeLimit" || res.termination == "gapTol"));
  CHECK(res.nodes <= 1);
}

TEST_CASE("dual <= primal and gap formula holds") {
  for (unsigned seed = 0; seed < 8; ++seed) {
    GenShape shape{1, 2, 2, 1.3};
    const auto inst = generateInstance(shape, 0.5, seed);
    BnBConfig cfg;
    cfg.nodeLimit = 500;
    const auto res = solve(inst, cfg);
    REQUIRE(res.hasIncumbent);
    CHECK(res.dual <= res.primal + 1e-7);
    CHECK(res.gap == doctest::Approx((res.primal - res.dual) /
                                     std::max(std::abs(res.primal), 1e-9))
                         .epsilon(1e-9));
  }
}

TEST_CASE("solver matches the grid oracle on small residual instances") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    GenShape shape{1, 2, 2, 1.4};
    const auto inst = generateInstance(shape, 0.6, seed + 100);
    BnBConfig cfg;
    cfg.nodeLimit = 5000;
    const auto res = solve(inst, cfg);
    const auto oracle = oracleSolve(inst, 1e-3);
    REQUIRE(res.hasIncumbent);
    REQUIRE(oracle.feasible);
    CHECK(res.primal <= oracle.value + 1e-6);   // grid point is feasible
    CHECK(res.dual <= oracle.value + 1e-7);     // oracle is an upper bound
    CHECK(std::abs(res.primal - oracle.value) <= 2e-3);
  }
}

TEST_CASE("McCormick relaxation with every branching rule also converges") {
  const auto inst = xyQuarterResidual();
  for (const char* rel : {"hull", "mccormick"}) {
    for (const char* rule :
         {"alg1", "gap-maxdev", "gap-incumbent", "gap-bisect", "range-bisect"}) {
      BnBConfig cfg;
      cfg.relaxation = rel;
      cfg.rule = rule;
      cfg.nodeLimit = 3000;
      const auto res = solve(inst, cfg);
      REQUIRE(res.hasIncumbent);
      CHECK(res.primal == doctest::Approx(0.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("alternating heuristic: xy = 0.25 from x = 1 reaches residual 0") {
  const auto inst = xyQuarterResidual();
  Eigen::VectorXd start(2);
  start << 1.0, 0.9;
  const auto out = alternatingHeuristic(inst, start, 3);
  REQUIRE(out.has_value());
  CHECK(out->second == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(out->first[0] * out->first[1] == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("alternating heuristic is a fixed point at zero-residual points") {
  const auto inst = xyQuarterResidual();
  Eigen::VectorXd start(2);
  start << 0.5, 0.5;
  const auto out = alternatingHeuristic(inst, start, 2);
  REQUIRE(out.has_value());
  CHECK(out->second == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("maxRounds = 0 only evaluates the start point") {
  const auto inst = xyQuarterResidual();
  Eigen::VectorXd start(2);
  start << 1.0, 1.0;  // residual 0.75
  const auto out = alternatingHeuristic(inst, start, 0);
  REQUIRE(out.has_value());
  CHECK(out->second == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("updateGlobalBound arithmetic") {
  {
    const auto [dual, gap] = updateGlobalBound({1.2, 0.9}, 2.0);
    CHECK(dual == doctest::Approx(0.9));
    CHECK(gap == doctest::Approx(0.55));
  }
  {
    const auto [dual, gap] = updateGlobalBound({}, 2.0);
    CHECK(dual == doctest::Approx(2.0));
    CHECK(gap == doctest::Approx(0.0));
  }
  {
    const auto [dual, gap] = updateGlobalBound({0.5}, std::nullopt);
    CHECK(dual == doctest::Approx(0.5));
    CHECK(std::isinf(gap));
  }
}

TEST_CASE("feasibleObjective accepts in-channel residuals and rejects others") {
  const auto inst = xyQuarterResidual();
  Eigen::VectorXd pt(2);
  pt << 0.5, 0.5;
  auto v = feasibleObjective(inst, pt);
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(0.0).epsilon(1e-12));

  auto tight = inst;
  tight.rows[0].zPlus = ResidualChannel{0.1, 1.0};
  tight.rows[0].zMinus = ResidualChannel{0.1, 1.0};
  pt << 1.0, 1.0;  // residual 0.75 > 0.1
  CHECK(!feasibleObjective(tight, pt).has_value());
}

TEST_CASE("logged global dual bound is non-decreasing and below the primal") {
  GenShape shape{2, 3, 4, 1.5};
  const auto inst = generateInstance(shape, 0.7, 9);
  BnBConfig cfg;
  cfg.nodeLimit = 300;
  const auto res = solve(inst, cfg);
  REQUIRE(!res.log.empty());
  double last = -std::numeric_limits<double>::infinity();
  for (const auto& e : res.log) {
    CHECK(e.dual >= last - 1e-9);
    last = std::max(last, e.dual);
    // Each node's own bound can only strengthen its parent's.
    CHECK(e.bound >= e.dual - 1e-7);
  }
  if (res.hasIncumbent) CHECK(last <= res.primal + 1e-7);
}

TEST_CASE("deterministic: same config twice gives identical results") {
  GenShape shape{2, 3, 3, 1.5};
  const auto inst = generateInstance(shape, 0.5, 21);
  BnBConfig cfg;
  cfg.nodeLimit = 200;
  const auto r1 = solve(inst, cfg);
  const auto r2 = solve(inst, cfg);
  CHECK(r1.nodes == r2.nodes);
  CHECK(r1.dual == doctest::Approx(r2.dual).epsilon(1e-12));
  if (r1.hasIncumbent) {
    CHECK(r1.primal == doctest::Approx(r2.primal).epsilon(1e-12));
  }
}
