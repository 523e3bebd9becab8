#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bbp/scaling.hpp"

using namespace bbp;

namespace {

BBPInstance oneRow(double q, double a, double b, double c, double xl, double xu,
                   double yl, double yu) {
  BBPInstance inst;
  inst.n1 = 1;
  inst.n2 = 1;
  inst.lower = Eigen::VectorXd(2);
  inst.upper = Eigen::VectorXd(2);
  inst.lower << xl, yl;
  inst.upper << xu, yu;
  BilinearRow row;
  if (q != 0) row.form.qTerms = {{0, 0, q}};
  if (a != 0) row.form.aLin = {{0, a}};
  if (b != 0) row.form.bLin = {{0, b}};
  row.form.constant = c;
  inst.rows.push_back(row);
  return inst;
}

double coeffOf(const std::vector<std::pair<int, double>>& lin, int idx) {
  for (const auto& [i, v] : lin)
    if (i == idx) return v;
  return 0.0;
}

}  // namespace

TEST_CASE("normalizeBox: x in [-1,1] expands q=a=b=1,c=0 as derived") {
  // Substituting x = 2x' - 1 into xy + x + y gives 2x'y + 2x' + 0*y - 1.
  const auto inst = oneRow(1, 1, 1, 0, -1, 1, 0, 1);
  const auto ni = normalizeBox(inst);
  REQUIRE(ni.instance.rows.size() == 1);
  const auto& f = ni.instance.rows[0].form;
  REQUIRE(f.qTerms.size() == 1);
  CHECK(f.qTerms[0].value == doctest::Approx(2.0));
  CHECK(coeffOf(f.aLin, 0) == doctest::Approx(2.0));
  CHECK(coeffOf(f.bLin, 0) == doctest::Approx(0.0));
  CHECK(f.constant == doctest::Approx(-1.0));
  CHECK((ni.instance.lower.array() == 0.0).all());
  CHECK((ni.instance.upper.array() == 1.0).all());
}

TEST_CASE("normalizeBox: unit-box instance is untouched, identity scaling") {
  const auto inst = oneRow(1, 0.5, -0.25, 0.1, 0, 1, 0, 1);
  const auto ni = normalizeBox(inst);
  CHECK(ni.scaling.isIdentity());
  CHECK(ni.instance.rows[0].form.constant == doctest::Approx(0.1));
  CHECK(ni.instance.rows[0].form.qTerms[0].value == doctest::Approx(1.0));
}

TEST_CASE("normalizeBox: fixed variable is eliminated into constants") {
  BBPInstance inst;
  inst.n1 = 2;
  inst.n2 = 1;
  inst.lower = Eigen::VectorXd(3);
  inst.upper = Eigen::VectorXd(3);
  inst.lower << 0, 0.5, 0;
  inst.upper << 1, 0.5, 1;
  BilinearRow row;
  row.form.qTerms = {{1, 0, 2.0}};  // 2 * x1 * y0, x1 fixed at 0.5
  row.form.aLin = {{1, 4.0}};
  inst.rows.push_back(row);
  const auto ni = normalizeBox(inst);
  CHECK(ni.instance.n1 == 1);
  const auto& f = ni.instance.rows[0].form;
  CHECK(f.qTerms.empty());
  CHECK(coeffOf(f.bLin, 0) == doctest::Approx(1.0));  // 2*0.5*y
  CHECK(f.constant == doctest::Approx(2.0));          // 4*0.5
}

TEST_CASE("round-trip: normalized rows evaluate identically at random points") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    BBPInstance inst;
    inst.n1 = 2;
    inst.n2 = 3;
    inst.lower = Eigen::VectorXd(5);
    inst.upper = Eigen::VectorXd(5);
    for (int v = 0; v < 5; ++v) {
      const double a = U(rng), b = U(rng);
      inst.lower[v] = std::min(a, b);
      inst.upper[v] = std::max(a, b) + 0.1;
    }
    BilinearRow row;
    row.form.qTerms = {{0, 0, U(rng)}, {1, 2, U(rng)}};
    row.form.aLin = {{0, U(rng)}, {1, U(rng)}};
    row.form.bLin = {{1, U(rng)}};
    row.form.constant = U(rng);
    inst.rows.push_back(row);
    inst.objective = row.form;

    const auto ni = normalizeBox(inst);
    std::uniform_real_distribution<double> T(0.0, 1.0);
    for (int p = 0; p < 100; ++p) {
      Eigen::VectorXd unitPt(5);
      for (int v = 0; v < 5; ++v) unitPt[v] = T(rng);
      const Eigen::VectorXd orig = ni.scaling.unnormalizePoint(unitPt);
      const Eigen::VectorXd ox = orig.head(2), oy = orig.tail(3);
      const Eigen::VectorXd ux = unitPt.head(2), uy = unitPt.tail(3);
      CHECK(ni.instance.rows[0].form.eval(ux, uy) ==
            doctest::Approx(inst.rows[0].form.eval(ox, oy)).epsilon(1e-10));
      CHECK(ni.instance.objective.eval(ux, uy) ==
            doctest::Approx(inst.objective.eval(ox, oy)).epsilon(1e-10));
    }
  }
}

TEST_CASE("inequalityToEquality: xy <= 0.5 gets slack in [0, 0.5]") {
  BilinearForm f;
  f.qTerms = {{0, 0, 1.0}};
  f.constant = -0.5;
  const auto conv = inequalityToEquality(f, '<', Box::unit(2), 1);
  REQUIRE(conv.slackNeeded);
  CHECK(conv.slackSign == 1);
  CHECK(conv.slackLo == doctest::Approx(0.0));
  CHECK(conv.slackHi == doctest::Approx(0.5));
}

TEST_CASE("inequalityToEquality: x + y >= 1 gets slack in [0, 1]") {
  BilinearForm f;
  f.aLin = {{0, 1.0}};
  f.bLin = {{0, 1.0}};
  f.constant = -1.0;
  const auto conv = inequalityToEquality(f, '>', Box::unit(2), 1);
  REQUIRE(conv.slackNeeded);
  CHECK(conv.slackSign == -1);
  CHECK(conv.slackLo == doctest::Approx(0.0));
  CHECK(conv.slackHi == doctest::Approx(1.0));
}

TEST_CASE("inequalityToEquality: equality rows pass through") {
  BilinearForm f;
  f.aLin = {{0, 1.0}};
  const auto conv = inequalityToEquality(f, '=', Box::unit(2), 1);
  CHECK(!conv.slackNeeded);
}
