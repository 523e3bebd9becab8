#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bbp/curve.hpp"

using namespace bbp;

TEST_CASE("canonicalize: xy - 0.25 is the hyperbola r=0, s=0, tau=0.25") {
  const auto c = canonicalize(1, 0, 0, -0.25);
  REQUIRE(c.kind == CanonicalCurve::Kind::Hyperbola);
  CHECK(c.r == doctest::Approx(0.0));
  CHECK(c.s == doctest::Approx(0.0));
  CHECK(c.tau == doctest::Approx(0.25));
}

TEST_CASE("canonicalize: (2,-2,-1,0.5) gives r=0.5, s=1, tau=0.25") {
  const auto c = canonicalize(2, -2, -1, 0.5);
  REQUIRE(c.kind == CanonicalCurve::Kind::Hyperbola);
  CHECK(c.r == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.tau == doctest::Approx(0.25).epsilon(1e-12));
  // Identity q(x-r)(y-s) - q*tau == qxy + ax + by + c at curve points.
  for (int k = 1; k <= 10; ++k) {
    const double x = c.r + 0.1 * k;
    const double y = c.s + c.tau / (x - c.r);
    CHECK(2 * x * y - 2 * x - y + 0.5 == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("canonicalize: q=0, a=1, b=-1, c=0 is the parabola branch x=y") {
  const auto c = canonicalize(0, 1, -1, 0);
  REQUIRE(c.kind == CanonicalCurve::Kind::Parabola);
  // x = (-c - b*y)/a = y; w = x*y = y^2 -> p1 = 0, p2 = 1.
  CHECK(c.p1 == doctest::Approx(0.0));
  CHECK(c.p2 == doctest::Approx(1.0));
}

TEST_CASE("canonicalize: all-zero coefficients with c != 0 throws") {
  CHECK_THROWS_AS(canonicalize(0, 0, 0, 1.0), std::invalid_argument);
}

TEST_CASE("canonicalization involution: parameters reproduce coefficients") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> C(-2, 2);
  for (int t = 0; t < 50; ++t) {
    const double q = C(rng), a = C(rng), b = C(rng), cc = C(rng);
    if (std::abs(q) < 0.1) continue;
    const auto c = canonicalize(q, a, b, cc);
    REQUIRE(c.kind == CanonicalCurve::Kind::Hyperbola);
    CHECK(-c.s * c.q == doctest::Approx(a).epsilon(1e-12));
    CHECK(-c.r * c.q == doctest::Approx(b).epsilon(1e-12));
    // tau = (ab - cq)/q^2  =>  c = (ab - tau q^2)/q.
    CHECK((a * b - c.tau * q * q) / q == doctest::Approx(cc).epsilon(1e-10));
  }
}

TEST_CASE("intersectBox: xy = 0.25 is one branch with the derived A, B, C") {
  const auto geo = intersectBox(canonicalize(1, 0, 0, -0.25));
  REQUIRE(geo.box == CurveBoxGeometry::Case::OneBranch);
  REQUIRE(geo.arcs.size() == 1);
  const auto& arc = geo.arcs[0];
  CHECK(arc.A.x == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(arc.A.y == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(arc.B.x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(arc.B.y == doctest::Approx(0.25).epsilon(1e-9));
  REQUIRE(arc.C.has_value());
  CHECK(arc.C->x == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(arc.C->y == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("intersectBox: (x-0.5)(y-0.5)=0.04 has two branches at 0.42/0.58") {
  const auto geo = intersectLevel(0.5, 0.5, 0.04);
  REQUIRE(geo.box == CurveBoxGeometry::Case::TwoBranches);
  REQUIRE(geo.arcs.size() == 2);
  // Left (SW) branch ends where it meets y = 0: x = 0.5 - 0.04/0.5 = 0.42.
  CHECK(geo.arcs[0].xHi == doctest::Approx(0.42).epsilon(1e-9));
  // Right (NE) branch starts where it meets y = 1: x = 0.58.
  CHECK(geo.arcs[1].xLo == doctest::Approx(0.58).epsilon(1e-9));
}

TEST_CASE("intersectBox: xy = 2 misses the unit box") {
  const auto geo = intersectBox(canonicalize(1, 0, 0, -2.0));
  CHECK(geo.box == CurveBoxGeometry::Case::Empty);
}

TEST_CASE("intersectBox: tau = 0 degenerates into the line pair") {
  const auto geo = intersectBox(canonicalize(1, -0.5, -0.25, 0.125));
  REQUIRE(geo.box == CurveBoxGeometry::Case::DegenerateLines);
  CHECK(geo.hasVertical);
  CHECK(geo.lineX == doctest::Approx(0.25));
  CHECK(geo.hasHorizontal);
  CHECK(geo.lineY == doctest::Approx(0.5));
}

TEST_CASE("negative tau levels are clipped correctly via reflection") {
  // (x - 0.5)(y - 0.5) = -0.04: branches through the box corners NW/SE.
  const auto geo = intersectLevel(0.5, 0.5, -0.04);
  REQUIRE(geo.box == CurveBoxGeometry::Case::TwoBranches);
  for (const auto& arc : geo.arcs) {
    CHECK(arc.xLo >= -1e-12);
    CHECK(arc.xHi <= 1 + 1e-12);
    CHECK(arc.xLo < arc.xHi);
    // Endpoints lie on the curve and on the box boundary.
    for (const CurvePoint& pt : {arc.A, arc.B}) {
      CHECK((pt.x - 0.5) * (pt.y - 0.5) == doctest::Approx(-0.04).epsilon(1e-9));
      const bool onBoundary = std::abs(pt.x) < 1e-9 || std::abs(pt.x - 1) < 1e-9 ||
                              std::abs(pt.y) < 1e-9 || std::abs(pt.y - 1) < 1e-9;
      CHECK(onBoundary);
    }
  }
}

TEST_CASE("arc endpoints always lie on curve and box for random levels") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> R(-1.5, 2.5), T(-2, 2);
  for (int t = 0; t < 200; ++t) {
    const double r = R(rng), s = R(rng), tau = T(rng);
    if (std::abs(tau) < 1e-6) continue;
    const auto geo = intersectLevel(r, s, tau);
    for (const auto& arc : geo.arcs) {
      for (const CurvePoint& pt : {arc.A, arc.B}) {
        CHECK(pt.x >= -1e-9);
        CHECK(pt.x <= 1 + 1e-9);
        CHECK(pt.y >= -1e-9);
        CHECK(pt.y <= 1 + 1e-9);
        CHECK((pt.x - r) * (pt.y - s) == doctest::Approx(tau).epsilon(1e-8));
      }
      if (arc.C) {
        CHECK((arc.C->x - r) * (arc.C->y - s) ==
              doctest::Approx(tau).epsilon(1e-8));
      }
    }
  }
}
