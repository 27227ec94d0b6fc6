#include "sweep/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "sweep/solver.hpp"

namespace sweep {

std::string familyName(Family f) {
  switch (f) {
    case Family::ConstantShift: return "constant_shift";
    case Family::Amplitude: return "amplitude";
    case Family::JumpSize: return "jump_size";
    case Family::Reshape: return "reshape";
    case Family::Wiggle: return "wiggle";
    case Family::DusOnly: return "dus_only";
  }
  throw Error("unknown family");
}

std::vector<Family> allFamilies() {
  return {Family::ConstantShift, Family::Amplitude, Family::JumpSize,
          Family::Reshape,       Family::Wiggle,    Family::DusOnly};
}

namespace {

// Zigzag with k teeth of amplitude a on [0, T]: 0 at even grid points, a at
// odd ones; sup norm a, variation 2ka, endpoints 0.
BVPath zigzag(double T, int teeth, double amplitude, int dim) {
  std::vector<double> times;
  std::vector<Vec> values;
  const int pts = 2 * teeth;
  for (int i = 0; i <= pts; ++i) {
    times.push_back(T * static_cast<double>(i) / pts);
    Vec v = Vec::Zero(dim);
    v[0] = (i % 2 == 1) ? amplitude : 0.0;
    values.push_back(std::move(v));
  }
  return BVPath::piecewiseLinear(std::move(times), std::move(values));
}

// Triangle bump with unit BV norm (sup 1/3, variation 2/3).
BVPath triangleBump(double T, int dim) {
  std::vector<double> times{0.0, 0.25 * T, 0.5 * T, 0.75 * T, T};
  std::vector<Vec> values;
  for (int i = 0; i < 5; ++i) values.push_back(Vec::Zero(dim));
  values[2][0] = 1.0 / 3.0;
  return BVPath::piecewiseLinear(std::move(times), std::move(values));
}

// Largest jump of u, or throws.
std::pair<double, Vec> largestJump(const BVPath& u) {
  double best = 0.0;
  double at = -1.0;
  Vec j;
  for (const auto& n : u.nodes()) {
    const Vec d = n.right - n.left;
    if (d.norm() > best) {
      best = d.norm();
      at = n.t;
      j = d;
    }
  }
  if (at < 0.0) throw ConfigError("jump_size family needs an input with a jump");
  return {at, j};
}

double minFirstCoordinateSlope(const BVPath& u) {
  double worst = std::numeric_limits<double>::infinity();
  const auto& nodes = u.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double slope =
        (nodes[i + 1].left[0] - nodes[i].right[0]) / (nodes[i + 1].t - nodes[i].t);
    worst = std::min(worst, slope);
  }
  return worst;
}

}  // namespace

PerturbedInput perturb(Family family, const BVPath& u, const Vec& z0, int n,
                       std::uint64_t /*seed*/) {
  if (n < 1) throw ConfigError("perturbation index must be >= 1");
  const double T = u.horizon();
  const int d = u.dim();
  const double inv = 1.0 / static_cast<double>(n);

  BVPath un = u;
  switch (family) {
    case Family::ConstantShift: {
      Vec e = Vec::Zero(d);
      e[0] = inv;
      un = u + e;
      break;
    }
    case Family::Amplitude: {
      const BVPath w = u - BVPath::constant(T, u.at(0.0));
      const double norm = bvNorm(w);
      if (norm == 0.0) throw ConfigError("amplitude family needs a non-constant input");
      un = u + (inv / norm) * w;
      break;
    }
    case Family::JumpSize: {
      const auto [tJump, j] = largestJump(u);
      const double scale = inv / (2.0 * j.norm());
      std::vector<BVPath::Node> nodes;
      nodes.push_back({0.0, Vec::Zero(d), Vec::Zero(d)});
      nodes.push_back({tJump, Vec::Zero(d), Vec(scale * j)});
      if (tJump < T) nodes.push_back({T, Vec(scale * j), Vec(scale * j)});
      un = u + BVPath(T, std::move(nodes));
      break;
    }
    case Family::Reshape: {
      un = u + inv * triangleBump(T, d);
      break;
    }
    case Family::Wiggle: {
      const int teeth = n;
      const double amplitude = inv / (1.0 + 2.0 * teeth);
      un = u + zigzag(T, teeth, amplitude, d);
      break;
    }
    case Family::DusOnly: {
      // Keep the added variation fixed while the amplitude shrinks.  The
      // wiggle slope c/T must stay below the input's first-coordinate slope
      // so the total variation is unchanged exactly.
      const double addedVariation = 0.5;
      const double slope = addedVariation / T;
      if (!(minFirstCoordinateSlope(u) > slope))
        throw ConfigError(
            "dus_only family needs a strictly increasing first coordinate "
            "with slope margin");
      const int teeth = 8 * n;
      const double amplitude = addedVariation / (2.0 * teeth);
      un = u + zigzag(T, teeth, amplitude, d);
      break;
    }
  }
  return {un, z0, bvNormDist(un, u), dUniformStrict(un, u)};
}

BvContinuityConfig defaultBvContinuityConfig() {
  // Monotone ramp of slope 1.5 with a unit jump at t = 0.5.
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec1(0.0), vec1(0.0)});
  nodes.push_back({0.5, vec1(0.75), vec1(1.75)});
  nodes.push_back({1.0, vec1(2.5), vec1(2.5)});
  BVPath u(1.0, std::move(nodes));
  return BvContinuityConfig{std::move(u),
                            vec1(0.0),
                            ConvexSet::interval(-1.0, 1.0),
                            {1, 2, 4, 8, 16, 32},
                            1e-3,
                            0,
                            allFamilies()};
}

std::vector<FamilyReport> runBvContinuity(const BvContinuityConfig& config) {
  std::vector<double> uNodes;
  for (const auto& n : config.u.nodes()) uNodes.push_back(n.t);

  std::vector<FamilyReport> reports;
  for (Family family : config.families) {
    FamilyReport report{family, family != Family::DusOnly, {}, 0.0};
    for (int n : config.ns) {
      const PerturbedInput p =
          perturb(family, config.u, config.z0, n, config.seed);

      std::vector<double> mandatory = uNodes;
      for (const auto& node : p.u.nodes()) mandatory.push_back(node.t);
      const Grid grid =
          Grid::withStep(config.u.horizon(), config.h, mandatory);

      const SweepOutput base = play(config.z0, config.u, config.z, grid);
      const SweepOutput pert = play(p.z0, p.u, config.z, grid);
      const double di = dInf(pert.trajectory, base.trajectory);
      const double bv = bvNormDist(pert.trajectory, base.trajectory);
      report.rows.push_back({n, p.bvDist, p.dusDist, di, bv, grid.h});
      report.fittedC = std::max(
          report.fittedC, n * std::max(0.0, bv - 10.0 * config.h));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace sweep
