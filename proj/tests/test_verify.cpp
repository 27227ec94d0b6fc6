#include <doctest.h>

#include <cmath>

#include "sweep/corpus.hpp"
#include "sweep/verify.hpp"
#include "test_helpers.hpp"

using namespace sweep;
using namespace sweep::testing;

namespace {

Grid gridFor(const BVPath& u, double h) {
  std::vector<double> nodes;
  for (const auto& n : u.nodes()) nodes.push_back(n.t);
  return Grid::withStep(u.horizon(), h, nodes);
}

BVPath jumpInput() {
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec1(0.0), vec1(0.0)});
  nodes.push_back({0.5, vec1(0.0), vec1(3.0)});
  nodes.push_back({1.0, vec1(3.0), vec1(3.0)});
  return BVPath(1.0, std::move(nodes));
}

BVPath circleInput(int segments) {
  std::vector<double> times;
  std::vector<Vec> values;
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    const double a = 2.0 * M_PI * t;
    times.push_back(t);
    values.push_back(vec({2.2 * std::cos(a), 2.2 * std::sin(a)}));
  }
  return BVPath::piecewiseLinear(times, values);
}

}  // namespace

TEST_CASE("integral VI: equality test function gives zero") {
  const BVPath u = BVPath::linear(2.0, vec1(0.0), vec1(2.0));
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);
  const SweepOutput out = play(vec1(0.0), u, z, gridFor(u, 1e-2));
  const std::vector<BVPath> tests{u - out.trajectory};
  CHECK(checkIntegralVi(u, out.trajectory, z, tests) == doctest::Approx(0.0));
}

TEST_CASE("integral VI: constants on the scalar ramp") {
  const BVPath u = BVPath::linear(2.0, vec1(0.0), vec1(2.0));
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);
  const double h = 1e-3;
  const SweepOutput out = play(vec1(0.0), u, z, gridFor(u, h));
  std::vector<BVPath> tests;
  tests.push_back(BVPath::constant(2.0, vec1(-1.0)));
  tests.push_back(BVPath::constant(2.0, vec1(1.0)));
  const double residual = checkIntegralVi(u, out.trajectory, z, tests);
  CHECK(residual <= 10.0 * h);
}

TEST_CASE("integral VI on a jump: atoms pair with values at the jump") {
  const BVPath u = jumpInput();
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);
  const double h = 1e-3;
  const SweepOutput out = play(vec1(0.0), u, z, gridFor(u, h));
  // z = +1 is the adversarial direction for the jump term
  std::vector<BVPath> tests;
  tests.push_back(BVPath::constant(1.0, vec1(1.0)));
  tests.push_back(BVPath::constant(1.0, vec1(-1.0)));
  const double residual = checkIntegralVi(u, out.trajectory, z, tests);
  CHECK(residual <= 10.0 * h);
}

TEST_CASE("integral VI rejects test functions outside Z") {
  const BVPath u = BVPath::linear(1.0, vec1(0.0), vec1(1.0));
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);
  const SweepOutput out = play(vec1(0.0), u, z, gridFor(u, 1e-2));
  std::vector<BVPath> tests{BVPath::constant(1.0, vec1(2.0))};
  CHECK_THROWS_AS(checkIntegralVi(u, out.trajectory, z, tests),
                  TestFunctionOutsideZ);
}

TEST_CASE("integral VI with the standard families over the corpus") {
  for (const auto& item : builtinCorpus()) {
    CAPTURE(item.name);
    const double h = 1e-2;
    const SweepOutput out = play(item.z0, item.u, item.z, gridFor(item.u, h));
    const auto tests = standardViTestFunctions(item.u, out.trajectory, item.z, 1);
    const double residual = checkIntegralVi(item.u, out.trajectory, item.z, tests);
    CHECK(residual <= 10.0 * h);
  }
}

TEST_CASE("normal cone check: clean outputs pass, corrupted outputs fail") {
  const BVPath u = jumpInput();
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);
  const SetPath c = SetPath::translatePath(u, z);
  const SweepOutput out = play(vec1(0.0), u, z, gridFor(u, 1e-2));
  CHECK(checkNormalCone(c, out.trajectory) == 0);

  // negative control: perturb interior values
  std::vector<BVPath::Node> nodes = out.trajectory.nodes();
  for (std::size_t i = 1; i + 1 < nodes.size(); i += 3) {
    nodes[i].left[0] += 0.05;
    nodes[i].right[0] += 0.05;
  }
  const BVPath corrupted(out.trajectory.horizon(), std::move(nodes));
  CHECK(checkNormalCone(c, corrupted) >= 1);
}

TEST_CASE("rate independence") {
  const BVPath u = BVPath::linear(2.0, vec1(0.0), vec1(2.0));
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);

  // identity: both pipelines run the same recursion
  CHECK(checkRateIndependence(vec1(0.0), u, z,
                              NondecreasingMap::identity(2.0), 1e-2) ==
        doctest::Approx(0.0));

  // gamma(t) = t^2 / 2 on [0,2] as a piecewise-linear interpolant
  std::vector<double> times, values;
  for (int i = 0; i <= 200; ++i) {
    const double t = 2.0 * i / 200;
    times.push_back(t);
    values.push_back(t * t / 2.0);
  }
  const NondecreasingMap gamma = NondecreasingMap::piecewiseLinear(times, values);
  double prev = std::numeric_limits<double>::infinity();
  for (double h : {1e-2, 5e-3}) {
    const double defect = checkRateIndependence(vec1(0.0), u, z, gamma, h);
    CHECK(defect <= 10.0 * h);
    CHECK(defect <= prev + 1e-15);
    prev = defect;
  }

  // jumpy input through a piecewise-linear clock
  const BVPath uj = jumpInput();
  const NondecreasingMap pl =
      NondecreasingMap::piecewiseLinear({0.0, 0.3, 1.0}, {0.0, 0.6, 1.0});
  const double defectJ = checkRateIndependence(vec1(0.0), uj, z, pl, 1e-3);
  CHECK(defectJ <= 10.0 * 1e-3);
}

TEST_CASE("S/Q identities") {
  const ConvexSet z1 = ConvexSet::interval(-1.0, 1.0);

  // constant input: all increments vanish
  const BVPath c = BVPath::constant(1.0, vec1(0.2));
  const SqDefects dc = checkSqIdentities(vec1(0.0), c, z1, gridFor(c, 1e-2));
  CHECK(dc.orthogonality == 0.0);
  CHECK(dc.speed == 0.0);

  // scalar ramp: stuck phase has dy = 0, sliding phase has ds = 0
  const BVPath ramp = BVPath::linear(2.0, vec1(0.0), vec1(2.0));
  const SqDefects dr = checkSqIdentities(vec1(0.0), ramp, z1, gridFor(ramp, 1e-3));
  CHECK(dr.orthogonality <= 1e-9);
  CHECK(dr.speed <= 1e-9);

  // jumps are rejected
  CHECK_THROWS_AS(
      checkSqIdentities(vec1(0.0), jumpInput(), z1, gridFor(jumpInput(), 1e-2)),
      NotContinuousInput);

  // 2-D circular input around a ball: defects shrink roughly linearly
  const ConvexSet z2 = ConvexSet::ball(vec({0.0, 0.0}), 1.0);
  const BVPath u = circleInput(48);
  const SqDefects d1 =
      checkSqIdentities(vec({0.0, 0.0}), u, z2, gridFor(u, 2e-3));
  const SqDefects d2 =
      checkSqIdentities(vec({0.0, 0.0}), u, z2, gridFor(u, 1e-3));
  CHECK(d1.orthogonality > 0.0);
  CHECK(d2.orthogonality <= 0.8 * d1.orthogonality);
  CHECK(d2.speed <= 0.8 * d1.speed + 1e-12);
}

TEST_CASE("constant speed of w_hat") {
  const ConvexSet z = ConvexSet::interval(-1.0, 1.0);

  // V(u) = 0: vacuous
  CHECK(checkConstantSpeedW(vec1(0.0), BVPath::constant(1.0, vec1(0.0)), z,
                            1e-2) == 0.0);

  // scalar ramp: |w_hat'| = V/T on both phases
  const BVPath ramp = BVPath::linear(2.0, vec1(0.0), vec1(2.0));
  CHECK(checkConstantSpeedW(vec1(0.0), ramp, z, 1e-3) <= 1e-9);

  // jumpy input: gap cells are excluded, image cells still satisfy the law
  const BVPath uj = jumpInput();
  CHECK(checkConstantSpeedW(vec1(0.0), uj, z, 1e-3) <= 1e-6);

  // 2-D: defect shrinks with the step
  const ConvexSet z2 = ConvexSet::ball(vec({0.0, 0.0}), 1.0);
  const BVPath u = circleInput(48);
  const double w1 = checkConstantSpeedW(vec({0.0, 0.0}), u, z2, 2e-3);
  const double w2 = checkConstantSpeedW(vec({0.0, 0.0}), u, z2, 1e-3);
  CHECK(w2 <= 0.9 * w1 + 1e-10);
}

TEST_CASE("rate and pipeline defect envelopes halve on the Lipschitz corpus") {
  // Per-item ratios fluctuate with kink/grid alignment; the worst case over
  // the corpus tracks the first-order envelope.
  double rate1 = 0.0, rate2 = 0.0, pipe1 = 0.0, pipe2 = 0.0;
  for (const auto& item : builtinCorpus()) {
    if (!item.lipschitz) continue;
    const double T = item.u.horizon();
    std::vector<double> t, v;
    for (int i = 0; i <= 256; ++i) {
      const double x = T * i / 256.0;
      t.push_back(x);
      v.push_back(T * (x / T) * (x / T));
    }
    const NondecreasingMap gamma = NondecreasingMap::piecewiseLinear(t, v);
    rate1 = std::max(rate1,
                     checkRateIndependence(item.z0, item.u, item.z, gamma, 1e-2));
    rate2 = std::max(rate2,
                     checkRateIndependence(item.z0, item.u, item.z, gamma, 5e-3));
    const Grid g1 = gridFor(item.u, 1e-2);
    const Grid g2 = gridFor(item.u, 5e-3);
    pipe1 = std::max(pipe1,
                     dInf(play(item.z0, item.u, item.z, g1).trajectory,
                          playViaReparam(item.z0, item.u, item.z, g1).trajectory));
    pipe2 = std::max(pipe2,
                     dInf(play(item.z0, item.u, item.z, g2).trajectory,
                          playViaReparam(item.z0, item.u, item.z, g2).trajectory));
  }
  CHECK(rate2 / rate1 >= 0.35);
  CHECK(rate2 / rate1 <= 0.65);
  CHECK(pipe2 / pipe1 >= 0.35);
  CHECK(pipe2 / pipe1 <= 0.65);
}

TEST_CASE("monotonicity of the scalar play") {
  // ordered scalar inputs yield pointwise ordered outputs
  const ConvexSet z = ConvexSet::interval(-0.5, 1.0);
  const BVPath lo = BVPath::piecewiseLinear({0.0, 0.6, 1.0},
                                            {vec1(0.0), vec1(1.4), vec1(0.2)});
  const BVPath hi = lo + vec1(0.3);
  const Grid grid = gridFor(lo, 1e-3);
  const SweepOutput ylo = play(vec1(0.0), lo, z, grid);
  const SweepOutput yhi = play(vec1(0.0), hi, z, grid);
  for (double t : grid.times)
    CHECK(yhi.trajectory.at(t)[0] >= ylo.trajectory.at(t)[0] - 1e-12);
}
