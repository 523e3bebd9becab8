#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "bbp/cuts.hpp"

using namespace bbp;

namespace {

// Finds a cut proportional to (cx, cy, cw, rhs); scaling is normalized away.
bool hasCut(const CutSet& cuts, double cx, double cy, double cw, double rhs) {
  for (const auto& c : cuts) {
    const double nc = std::max({std::abs(c.cx), std::abs(c.cy), std::abs(c.cw)});
    const double nt = std::max({std::abs(cx), std::abs(cy), std::abs(cw)});
    if (nc < 1e-12 || nt < 1e-12) continue;
    if (std::abs(c.cx / nc - cx / nt) < 1e-7 &&
        std::abs(c.cy / nc - cy / nt) < 1e-7 &&
        std::abs(c.cw / nc - cw / nt) < 1e-7 &&
        std::abs(c.rhs / nc - rhs / nt) < 1e-7)
      return true;
  }
  return false;
}

// Exact points of the band set: for sampled x and residual level e, solve
// q*x*y + a*x + b*y + c = e for y and keep box-interior solutions.
std::vector<std::array<double, 2>> sampleSet(const BandSet& s, int nx, int ne,
                                             std::mt19937& rng) {
  std::vector<std::array<double, 2>> pts;
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < nx; ++i) {
    const double x = U(rng);
    for (int k = 0; k < ne; ++k) {
      const double e = s.lo + (s.hi - s.lo) * (ne == 1 ? 0.0 : double(k) / (ne - 1));
      const double den = s.q * x + s.b;
      if (std::abs(den) < 1e-9) continue;
      const double y = (e - s.c - s.a * x) / den;
      if (y >= 0 && y <= 1) pts.push_back({x, y});
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("outerApproximateRegion: xy = 0.25 reproduces the derived cuts") {
  const BandSet set{1, 0, 0, -0.25, 0, 0};
  const auto approx = outerApproximateRegion(set);
  REQUIRE(approx.feasible);
  CHECK(hasCut(approx.cuts, 4, 1, 0, 2));        // tangent at A
  CHECK(hasCut(approx.cuts, 1, 4, 0, 2));        // tangent at B
  CHECK(hasCut(approx.cuts, 1, 1, 0, 1));        // tangent at C
  CHECK(hasCut(approx.cuts, -1, -1, 0, -1.25));  // chord x + y <= 1.25
  CHECK(hasCut(approx.cuts, 0, 0, 1, 0.25));     // w band
  CHECK(hasCut(approx.cuts, 0, 0, -1, -0.25));
}

TEST_CASE("validateCut: tangent 4x + y >= 2 certified on xy = 0.25") {
  const BandSet set{1, 0, 0, -0.25, 0, 0};
  const auto cut = validateCut(set, Cut{4, 1, 0, 2, "tangent", 0});
  REQUIRE(cut.has_value());
  CHECK(cut->certificate >= -1e-9);
  // min of 4x + 0.25/x is 2 at x = 0.5 -> certificate is (numerically) 0.
  CHECK(cut->certificate == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("validateCut: x + y >= 1.2 rejected on xy = 0.25") {
  const BandSet set{1, 0, 0, -0.25, 0, 0};
  CHECK(!validateCut(set, Cut{1, 1, 0, 1.2, "tangent", 0}).has_value());
}

TEST_CASE("validateCut: box constraint x >= 0 accepted trivially") {
  const BandSet set{1, 0, 0, -0.25, 0, 0};
  CHECK(validateCut(set, Cut{1, 0, 0, 0, "box", 0}).has_value());
}

TEST_CASE("minSlackOverSet: x + y - 1 attains 0 at the slope-matched point") {
  const BandSet set{1, 0, 0, -0.25, 0, 0};
  CHECK(minSlackOverSet(set, Cut{1, 1, 0, 1, "", 0}) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("minSlackOverSet: empty set reports +infinity") {
  const BandSet set{1, 0, 0, -2.0, 0, 0};  // xy = 2 misses the box
  CHECK(std::isinf(minSlackOverSet(set, Cut{0, 0, 0, 0, "", 0})));
}

TEST_CASE("parabolaCuts: w = y^2 gives chord w <= y and endpoint tangents") {
  const auto cuts = parabolaCuts(0, 1, 0, 1);
  CHECK(hasCut(cuts, 0, 1, -1, 0));   // chord: y - w >= 0
  CHECK(hasCut(cuts, 0, 0, 1, 0));    // tangent at 0: w >= 0
  CHECK(hasCut(cuts, 0, -2, 1, -1));  // tangent at 1: w - 2y >= -1
}

TEST_CASE("band width loosens the region: wider band keeps the curve inside") {
  const BandSet band{1, 0, 0, -0.25, -0.1, 0.1};
  const auto approx = outerApproximateRegion(band);
  REQUIRE(approx.feasible);
  std::mt19937 rng(7);
  const auto pts = sampleSet(band, 300, 5, rng);
  REQUIRE(pts.size() > 100);
  for (const auto& [x, y] : pts) {
    for (const auto& c : approx.cuts) {
      CHECK(c.cx * x + c.cy * y + c.cw * x * y - c.rhs >= -1e-8);
    }
  }
}

TEST_CASE("cut validity on random band sets (sampled curve points)") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> C(-1.5, 1.5), W(0, 0.3);
  int nonEmpty = 0;
  for (int t = 0; t < 60; ++t) {
    BandSet s;
    s.q = C(rng);
    s.a = C(rng);
    s.b = C(rng);
    s.c = C(rng);
    const double w1 = -W(rng), w2 = W(rng);
    s.lo = w1;
    s.hi = w2;
    const auto approx = outerApproximateRegion(s);
    if (!approx.feasible) continue;
    const auto pts = sampleSet(s, 120, 4, rng);
    if (!pts.empty()) ++nonEmpty;
    for (const auto& [x, y] : pts)
      for (const auto& c : approx.cuts)
        CHECK(c.cx * x + c.cy * y + c.cw * x * y - c.rhs >= -1e-8);
  }
  CHECK(nonEmpty >= 20);
}

TEST_CASE("every emitted cut carries a nonnegative certificate") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> C(-2, 2);
  for (int t = 0; t < 100; ++t) {
    const BandSet s{C(rng), C(rng), C(rng), C(rng), -0.05, 0.05};
    const auto approx = outerApproximateRegion(s);
    for (const auto& c : approx.cuts) CHECK(c.certificate >= -1e-9);
  }
}
