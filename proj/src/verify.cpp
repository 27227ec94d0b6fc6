#include "sweep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sweep {

namespace {

std::vector<double> mergedGrid(std::initializer_list<const BVPath*> paths) {
  std::vector<double> times;
  for (const BVPath* p : paths)
    for (const auto& n : p->nodes()) times.push_back(n.t);
  std::sort(times.begin(), times.end());
  const double tol = kTimeMergeTol * std::max(1.0, times.back());
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times)
    if (out.empty() || t - out.back() > tol) out.push_back(t);
  return out;
}

// Uniform double in [lo, hi] from explicit bit mixing, identical across
// platforms for a fixed seed.
double uniformDouble(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

}  // namespace

double checkIntegralVi(const BVPath& u, const BVPath& y, const ConvexSet& z,
                       std::span<const BVPath> zTests, double zTol) {
  double worst = -std::numeric_limits<double>::infinity();
  if (zTests.empty()) throw Error("no test functions supplied");
  for (const BVPath& zt : zTests) {
    const auto grid = mergedGrid({&u, &y, &zt});
    for (double t : grid) {
      if (distanceTo(z, zt.at(t)) > zTol || distanceTo(z, zt.leftLimit(t)) > zTol)
        throw TestFunctionOutsideZ("test function leaves the characteristic set");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      const double a = grid[k], b = grid[k + 1];
      const Vec yLeftB = y.leftLimit(b);
      const Vec cont = yLeftB - y.at(a);
      sum += (zt.at(a) - u.at(a) + y.at(a)).dot(cont);
      const Vec jump = y.at(b) - yLeftB;
      if (jump.norm() > 0.0)
        sum += (zt.at(b) - u.at(b) + y.at(b)).dot(jump);
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

int checkNormalCone(const SetPath& c, const BVPath& trajectory, double tol) {
  int failures = 0;
  const auto& nodes = trajectory.nodes();
  const double scale = std::max(1.0, trajectory.supNorm());
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double t = nodes[k + 1].t;
    // Segment increment against the pre-jump set, then the jump increment
    // against the arrival set.
    const Vec segMove = nodes[k + 1].left - nodes[k].right;
    if (segMove.norm() > tol * scale) {
      const ConvexSet pre = c.leftLimit(t);
      if (distanceTo(pre, nodes[k + 1].left) > tol ||
          normalConeResidual(pre, nodes[k + 1].left, -segMove) > tol)
        ++failures;
    }
    const Vec jumpMove = nodes[k + 1].right - nodes[k + 1].left;
    if (jumpMove.norm() > tol * scale) {
      const ConvexSet post = c.at(t);
      if (distanceTo(post, nodes[k + 1].right) > tol ||
          normalConeResidual(post, nodes[k + 1].right, -jumpMove) > tol)
        ++failures;
    }
  }
  return failures;
}

double checkRateIndependence(const Vec& z0, const BVPath& u, const ConvexSet& z,
                             const NondecreasingMap& gamma, double h) {
  const BVPath ug = rateTransform(u, gamma);
  std::vector<double> ugNodes;
  for (const auto& n : ug.nodes()) ugNodes.push_back(n.t);
  const Grid gridPrime = Grid::withStep(gamma.horizon(), h, ugNodes);
  const SweepOutput left = play(z0, ug, z, gridPrime);

  std::vector<double> uNodes;
  for (const auto& n : u.nodes()) uNodes.push_back(n.t);
  const Grid grid = Grid::withStep(u.horizon(), h, uNodes);
  const SweepOutput right = play(z0, u, z, grid);
  const BVPath rightComposed = compose(right.trajectory, gamma);

  return dInf(left.trajectory, rightComposed);
}

namespace {

// Cells where the contact phase changes are the discrete counterpart of the
// null set on which the a.e. identities may fail: stick/slip transitions,
// and sliding cells whose motion direction turns sharply (the contact
// normal crossing a nonsmooth boundary point of Z).  Exclude those together
// with cells adjacent to input kinks.
std::vector<bool> includedCells(const BVPath& u, const BVPath& y,
                                const std::vector<double>& times) {
  const std::size_t cells = times.size() - 1;
  std::vector<bool> moving(cells);
  std::vector<Vec> dy(cells);
  const double floorTol = 1e-11 * std::max(1.0, y.supNorm());
  for (std::size_t k = 0; k < cells; ++k) {
    dy[k] = y.at(times[k + 1]) - y.at(times[k]);
    moving[k] = dy[k].norm() > floorTol;
  }

  std::vector<bool> included(cells, true);
  auto excludeAround = [&](std::size_t k) {
    if (k > 0) included[k - 1] = false;
    included[k] = false;
    if (k + 1 < cells) included[k + 1] = false;
  };
  for (std::size_t k = 0; k < cells; ++k) {
    if ((k > 0 && moving[k - 1] != moving[k]) ||
        (k + 1 < cells && moving[k + 1] != moving[k]))
      included[k] = false;
    if (k > 0 && moving[k - 1] && moving[k]) {
      const double cosine =
          dy[k - 1].dot(dy[k]) / (dy[k - 1].norm() * dy[k].norm());
      if (cosine < 0.99) {
        excludeAround(k - 1);
        excludeAround(k);
      }
    }
  }
  // Exclude cells touching an interior node (kink) of u.
  std::size_t cell = 0;
  for (const auto& n : u.nodes()) {
    if (n.t <= times.front() || n.t >= times.back()) continue;
    while (cell + 1 < cells && times[cell + 1] < n.t) ++cell;
    const double tol = kTimeMergeTol * std::max(1.0, times.back());
    for (std::size_t k = (cell == 0 ? 0 : cell - 1);
         k <= std::min(cells - 1, cell + 1); ++k)
      if (n.t >= times[k] - tol && n.t <= times[k + 1] + tol) included[k] = false;
  }
  return included;
}

}  // namespace

SqDefects checkSqIdentities(const Vec& z0, const BVPath& u, const ConvexSet& z,
                            const Grid& grid) {
  if (u.hasJumps())
    throw NotContinuousInput("stop/play identities need a continuous input");
  const SweepOutput out = play(z0, u, z, grid);
  const BVPath& y = out.trajectory;
  const auto& times = grid.times;
  const auto included = includedCells(u, y, times);

  SqDefects defects{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (!included[k]) continue;
    const double dt = times[k + 1] - times[k];
    const Vec du = u.at(times[k + 1]) - u.at(times[k]);
    const Vec dy = y.at(times[k + 1]) - y.at(times[k]);
    const Vec ds = du - dy;
    const Vec dq = dy - ds;
    defects.orthogonality =
        std::max(defects.orthogonality, std::abs(ds.dot(dy)) / (dt * dt));
    defects.speed =
        std::max(defects.speed, std::abs(dq.norm() - du.norm()) / dt);
  }
  return defects;
}

double checkConstantSpeedW(const Vec& z0, const BVPath& u, const ConvexSet& z,
                           double h) {
  const double V = u.variation();
  if (V == 0.0) return 0.0;
  const double T = u.horizon();
  const GeodesicFill fill = fillGeodesics(SetPath::translatePath(u, z));
  const SegmentFill seg = fillSegments(u);
  const Grid sigmaGrid = Grid::withStep(T, h, fill.ctilde.nodeTimes());
  const SweepOutput lifted = catchingUp(fill.ctilde, u.at(0.0) - z0, sigmaGrid);
  const BVPath what = 2.0 * lifted.trajectory - seg.utilde;

  const auto& times = sigmaGrid.times;
  auto inGap = [&fill](double a, double b) {
    for (const auto& g : fill.gaps)
      if (a < g.sigma1 && b > g.sigma0) return true;
    return false;
  };
  const auto included = includedCells(seg.utilde, lifted.trajectory, times);

  const double target = V / T;
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (!included[k] || inGap(times[k], times[k + 1])) continue;
    const double dt = times[k + 1] - times[k];
    const double speed = (what.at(times[k + 1]) - what.at(times[k])).norm() / dt;
    worst = std::max(worst, std::abs(speed - target));
  }
  return worst;
}

std::vector<BVPath> standardViTestFunctions(const BVPath& u, const BVPath& y,
                                            const ConvexSet& z,
                                            std::uint64_t seed, int count) {
  const double T = u.horizon();
  const int d = u.dim();
  std::vector<BVPath> tests;
  tests.push_back(u - y);  // the trajectory itself; makes the sum vanish
  tests.push_back(BVPath::constant(T, project(z, Vec::Zero(d))));

  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    // Piecewise-constant path switching between projections of random
    // points; stays in Z by construction.
    const int pieces = 2 + static_cast<int>(rng() % 4);
    std::vector<BVPath::Node> nodes;
    Vec value(d);
    auto draw = [&] {
      Vec raw(d);
      for (int j = 0; j < d; ++j) raw[j] = uniformDouble(rng, -3.0, 3.0);
      return project(z, raw);
    };
    value = draw();
    nodes.push_back({0.0, value, value});
    for (int p = 1; p < pieces; ++p) {
      const double t = T * static_cast<double>(p) / pieces;
      Vec next = draw();
      nodes.push_back({t, value, next});
      value = std::move(next);
    }
    nodes.push_back({T, value, value});
    tests.push_back(BVPath(T, std::move(nodes)));
  }
  return tests;
}

}  // namespace sweep
