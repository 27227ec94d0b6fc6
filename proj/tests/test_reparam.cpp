#include <doctest.h>

#include <cmath>

#include "sweep/reparam.hpp"
#include "test_helpers.hpp"

using namespace sweep;
using namespace sweep::testing;

namespace {

BVPath pureJump(double T, double at, double from, double to) {
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec1(from), vec1(from)});
  nodes.push_back({at, vec1(from), vec1(to)});
  nodes.push_back({T, vec1(to), vec1(to)});
  return BVPath(T, std::move(nodes));
}

BVPath twoJumpsWithIdle() {
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec1(0.0), vec1(0.0)});
  nodes.push_back({0.25, vec1(0.0), vec1(1.0)});
  nodes.push_back({0.5, vec1(1.0), vec1(1.0)});   // idle until 0.75
  nodes.push_back({0.75, vec1(1.0), vec1(2.0)});
  nodes.push_back({1.0, vec1(2.0), vec1(2.0)});
  return BVPath(1.0, std::move(nodes));
}

double maxSlopeDistance(const BVPath& a, const BVPath& b) {
  // compare piecewise slopes on the merged grid
  std::vector<double> times;
  for (const auto& n : a.nodes()) times.push_back(n.t);
  for (const auto& n : b.nodes()) times.push_back(n.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    if (dt <= 1e-14) continue;
    const Vec sa = (a.leftLimit(times[i + 1]) - a.at(times[i])) / dt;
    const Vec sb = (b.leftLimit(times[i + 1]) - b.at(times[i])) / dt;
    worst = std::max(worst, (sa - sb).norm());
  }
  return worst;
}

}  // namespace

TEST_CASE("fillSegments on a continuous ramp") {
  const BVPath ramp = BVPath::linear(1.0, vec1(0.0), vec1(1.0));
  const SegmentFill fill = fillSegments(ramp);
  CHECK(fill.gaps.empty());
  CHECK(dInf(fill.utilde, ramp) == 0.0);
  CHECK(constantSpeedCheck(fill.utilde, 1.0, 1.0) <= 1e-15);
}

TEST_CASE("fillSegments on a pure jump gives the unit-speed segment") {
  const BVPath u = pureJump(1.0, 0.5, 0.0, 1.0);
  const SegmentFill fill = fillSegments(u);
  REQUIRE(fill.gaps.size() == 1);
  CHECK(fill.gaps[0].sigma0 == 0.0);
  CHECK(fill.gaps[0].sigma1 == 1.0);
  CHECK(fill.gaps[0].jumpTime == 0.5);
  // utilde(sigma) = sigma
  for (double s = 0.0; s <= 1.0; s += 0.125)
    CHECK(fill.utilde.at(s)[0] == doctest::Approx(s));
  CHECK(fill.utilde.variation() == u.variation());
}

TEST_CASE("fillSegments constancy case") {
  const BVPath c = BVPath::constant(2.0, vec({1.0, 2.0}));
  const SegmentFill fill = fillSegments(c);
  CHECK(fill.ell.at(1.3) == 0.0);
  CHECK(dInf(fill.utilde, c) == 0.0);
  CHECK(constantSpeedCheck(fill.utilde, 0.0, 2.0) == 0.0);
}

TEST_CASE("round trip, variation preservation, Lipschitz bound") {
  std::vector<BVPath> inputs;
  inputs.push_back(BVPath::linear(2.0, vec1(0.0), vec1(2.0)));
  inputs.push_back(pureJump(1.0, 0.5, 0.0, 3.0));
  inputs.push_back(twoJumpsWithIdle());
  {
    std::vector<BVPath::Node> nodes;  // 2-D with jump and kinks
    nodes.push_back({0.0, vec({0.0, 0.0}), vec({0.0, 0.0})});
    nodes.push_back({0.4, vec({1.0, 0.5}), vec({-0.5, 1.0})});
    nodes.push_back({0.7, vec({0.2, -0.3}), vec({0.2, -0.3})});
    nodes.push_back({1.5, vec({1.0, 1.0}), vec({2.0, 1.0})});
    inputs.push_back(BVPath(1.5, std::move(nodes)));
  }

  for (const BVPath& u : inputs) {
    CAPTURE(u.horizon());
    const SegmentFill fill = fillSegments(u);
    // u = utilde o ell, exactly (node-wise and on segments)
    const BVPath roundTrip = compose(fill.utilde, fill.ell);
    CHECK(dInf(roundTrip, u) == 0.0);
    CHECK((roundTrip - u).variation() == 0.0);
    // V(utilde) = V(u) exactly
    CHECK(fill.utilde.variation() == u.variation());
    // Lip(utilde) <= V/T
    const double lipBound = u.variation() / u.horizon();
    CHECK(constantSpeedCheck(fill.utilde, u.variation(), u.horizon()) <= 1e-12);
    double lip = 0.0;
    const auto& nodes = fill.utilde.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      lip = std::max(lip, (nodes[i + 1].left - nodes[i].right).norm() /
                              (nodes[i + 1].t - nodes[i].t));
    CHECK(lip <= lipBound * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("image of ell misses exactly the jump gaps") {
  const BVPath u = twoJumpsWithIdle();
  const SegmentFill fill = fillSegments(u);
  REQUIRE(fill.gaps.size() == 2);
  // sampled sigma inside a gap has no preimage: ell never attains it
  for (const auto& gap : fill.gaps) {
    const double mid = 0.5 * (gap.sigma0 + gap.sigma1);
    for (double t = 0.0; t <= 1.0; t += 1e-3) {
      CHECK(std::abs(fill.ell.at(t) - mid) >= 1e-6);
    }
    // while the gap endpoints are attained
    bool hitsLeft = false;
    for (const auto& n : fill.ell.nodes()) {
      if (n.left == gap.sigma0 || n.right == gap.sigma0) hitsLeft = true;
    }
    CHECK(hitsLeft);
  }
}

TEST_CASE("fillGeodesics on the translate family") {
  const ConvexSet z = ConvexSet::ball(vec1(0.0), 1.0);

  // constant driver: constant filled path, ell = 0
  const SetPath constant =
      SetPath::translatePath(BVPath::constant(1.0, vec1(2.0)), z);
  const GeodesicFill cf = fillGeodesics(constant);
  CHECK(cf.ell.at(0.7) == 0.0);
  CHECK(cf.ctilde.isFilled());
  CHECK(structurallyEqual(cf.ctilde.at(0.3), constant.at(0.9)));

  // pure jump: single geodesic piece across the gap
  const BVPath u = pureJump(1.0, 0.5, 0.0, 3.0);
  const SetPath cu = SetPath::translatePath(u, z);
  const GeodesicFill gf = fillGeodesics(cu);
  REQUIRE(gf.gaps.size() == 1);
  // ell_{C_u} = ell_u
  const NondecreasingMap lu = arcLength(u);
  CHECK(dInf(gf.ell.asPath(), lu.asPath()) == 0.0);
  // V(C_u) = V(u)
  CHECK(cu.variation() == u.variation());
  // on the gap the value is the dilation intersection of the two translates
  const ConvexSet mid = gf.ctilde.at(0.5);
  const auto& rep = mid.repr();
  CHECK(std::holds_alternative<DilationIntersection>(rep));
  // membership: utilde(sigma) - Z subset of Ctilde(sigma)
  const SegmentFill sf = fillSegments(u);
  for (double s = 0.1; s <= 0.9; s += 0.2) {
    const Vec point = sf.utilde.at(s) - vec1(0.8);  // utilde(s) - z, z in Z
    CHECK(contains(gf.ctilde.at(s), point, 1e-8));
  }

  // continuous driver: Ctilde(sigma) = utilde(sigma) - Z on the image
  const BVPath ramp = BVPath::linear(1.0, vec1(0.0), vec1(2.0));
  const GeodesicFill gr = fillGeodesics(SetPath::translatePath(ramp, z));
  const SegmentFill sr = fillSegments(ramp);
  for (double s = 0.0; s <= 1.0; s += 0.25) {
    const ConvexSet expected = ConvexSet::translate(z, sr.utilde.at(s));
    CHECK(hausdorffDistance(gr.ctilde.at(s), expected) <= 1e-12);
  }
}

TEST_CASE("round trip on randomized jumpy paths") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int m = 3 + static_cast<int>(rng() % 5);
    std::vector<BVPath::Node> nodes;
    double t = 0.0;
    for (int i = 0; i < m; ++i) {
      Vec left = randomVec(rng, d, -2.0, 2.0);
      Vec right = left;
      const bool jump = i > 0 && (rng() % 3 == 0);
      if (jump) right = randomVec(rng, d, -2.0, 2.0);
      nodes.push_back({t, std::move(left), std::move(right)});
      t += uniform(rng, 0.1, 1.0);
    }
    nodes.back().t = t;  // ensure the last node sits at the horizon
    // normalize: first node continuous at 0
    nodes.front().t = 0.0;
    nodes.front().left = nodes.front().right;
    const double T = nodes.back().t;
    const BVPath u(T, std::move(nodes));

    const SegmentFill fill = fillSegments(u);
    CHECK(dInf(compose(fill.utilde, fill.ell), u) == 0.0);
    CHECK(fill.utilde.variation() == u.variation());
    if (u.variation() > 0.0) {
      CHECK(fill.ell.at(T) == T);
      CHECK(constantSpeedCheck(fill.utilde, u.variation(), T) <= 1e-9);
    }
  }
}

TEST_CASE("arc length commutes with continuous reparametrization") {
  // ell_{u o gamma} = ell_u o gamma when gamma keeps the horizon
  const BVPath u = twoJumpsWithIdle();
  const NondecreasingMap gamma = NondecreasingMap::piecewiseLinear(
      {0.0, 0.4, 1.0}, {0.0, 0.7, 1.0});
  const BVPath composedInput = compose(u, gamma);
  const NondecreasingMap lhs = arcLength(composedInput);
  const NondecreasingMap rhs = compose(arcLength(u), gamma);
  CHECK(dInf(lhs.asPath(), rhs.asPath()) <= 1e-12);
}

TEST_CASE("fill stability under BV-norm perturbations") {
  const BVPath u = pureJump(1.0, 0.5, 0.0, 2.0);
  const SegmentFill base = fillSegments(u);
  double prevDus = std::numeric_limits<double>::infinity();
  double prevSlope = std::numeric_limits<double>::infinity();
  for (int n : {2, 8, 32}) {
    const BVPath un = u + vec1(1.0 / n);
    const SegmentFill fn = fillSegments(un);
    const double dus = dUniformStrict(fn.utilde, base.utilde);
    const double slope = maxSlopeDistance(fn.utilde, base.utilde);
    CHECK(dus <= prevDus + 1e-15);
    CHECK(slope <= prevSlope + 1e-15);
    prevDus = dus;
    prevSlope = slope;
  }
  CHECK(prevDus <= 0.04);
  CHECK(prevSlope <= 0.04);
}
