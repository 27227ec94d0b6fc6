#include "sweep/solver.hpp"

#include <algorithm>
#include <cmath>

namespace sweep {

Grid Grid::withStep(double horizon, double step, std::span<const double> mandatory) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error("grid step must be > 0");
  if (!(horizon > 0.0)) throw Error("grid horizon must be > 0");
  const double tol = kTimeMergeTol * std::max(1.0, horizon);

  std::vector<double> must;
  must.reserve(mandatory.size() + 2);
  for (double t : mandatory)
    if (t >= -tol && t <= horizon + tol) must.push_back(std::clamp(t, 0.0, horizon));
  must.push_back(0.0);
  must.push_back(horizon);
  std::sort(must.begin(), must.end());
  must.erase(std::unique(must.begin(), must.end()), must.end());

  std::vector<double> uniform;
  const auto n = static_cast<std::size_t>(std::ceil(horizon / step - tol));
  uniform.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    uniform.push_back(std::min(static_cast<double>(i) * step, horizon));

  // Union, preferring mandatory times when a uniform point falls within tol.
  std::vector<double> times;
  times.reserve(uniform.size() + must.size());
  std::size_t i = 0, j = 0;
  auto pushUniform = [&](double t) {
    if (!times.empty() && t - times.back() <= tol) return;
    if (j < must.size() && std::abs(must[j] - t) <= tol) return;  // let it win
    times.push_back(t);
  };
  auto pushMust = [&](double t) {
    if (!times.empty() && t - times.back() <= tol) times.pop_back();
    if (times.empty() || t - times.back() > tol) times.push_back(t);
  };
  while (i < uniform.size() || j < must.size()) {
    if (j >= must.size() || (i < uniform.size() && uniform[i] < must[j]))
      pushUniform(uniform[i++]);
    else
      pushMust(must[j++]);
  }
  times.front() = 0.0;
  times.back() = horizon;

  double h = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k)
    h = std::max(h, times[k + 1] - times[k]);
  return Grid{std::move(times), h};
}

Grid Grid::fromTimes(std::vector<double> times) {
  if (times.size() < 2) throw Error("grid needs at least two times");
  double h = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (!(times[k + 1] > times[k]))
      throw Error("grid times must be strictly increasing");
    h = std::max(h, times[k + 1] - times[k]);
  }
  if (times.front() != 0.0) throw Error("grid must start at 0");
  return Grid{std::move(times), h};
}

double SweepOutput::maxConstraintDist() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.constraintDist);
  return m;
}

double SweepOutput::maxNormalConeResidual() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.normalConeResidual);
  return m;
}

SweepOutput catchingUp(const SetPath& c, const Vec& y0, const Grid& grid) {
  const double T = c.horizon();
  const double tol = kTimeMergeTol * std::max(1.0, T);
  if (std::abs(grid.times.back() - T) > tol)
    throw GridMismatch("grid horizon differs from the set path horizon");
  {
    // Every node of the data must be a grid time.
    std::size_t k = 0;
    for (double t : c.nodeTimes()) {
      while (k < grid.times.size() && grid.times[k] < t - tol) ++k;
      if (k >= grid.times.size() || std::abs(grid.times[k] - t) > tol)
        throw GridMismatch("grid is missing a node time of the driving data");
    }
  }
  std::vector<double> jumps = c.jumpTimes();
  auto isJumpTime = [&jumps, tol](double t) {
    auto it = std::lower_bound(jumps.begin(), jumps.end(), t - tol);
    return it != jumps.end() && std::abs(*it - t) <= tol;
  };

  std::vector<BVPath::Node> nodes;
  nodes.reserve(grid.times.size());
  std::vector<StepDiagnostics> diags;
  diags.reserve(grid.times.size());

  Vec y = project(c.at(0.0), y0);
  nodes.push_back({0.0, y, y});
  diags.push_back({0.0, distanceTo(c.at(0.0), y), 0.0, false});

  for (std::size_t k = 1; k < grid.times.size(); ++k) {
    const double t = grid.times[k];
    const bool atJump = isJumpTime(t);
    Vec yLeft, yRight;
    double ncRes = 0.0;
    if (atJump) {
      const ConvexSet pre = c.leftLimit(t);
      yLeft = project(pre, y);
      ncRes = normalConeResidual(pre, yLeft, y - yLeft);
      const ConvexSet post = c.at(t);
      yRight = project(post, yLeft);
      ncRes = std::max(ncRes, normalConeResidual(post, yRight, yLeft - yRight));
      diags.push_back({t, distanceTo(post, yRight), ncRes, true});
    } else {
      const ConvexSet now = c.at(t);
      yRight = project(now, y);
      yLeft = yRight;
      ncRes = normalConeResidual(now, yRight, y - yRight);
      diags.push_back({t, distanceTo(now, yRight), ncRes, false});
    }
    nodes.push_back({t, std::move(yLeft), yRight});
    y = std::move(yRight);
  }

  return SweepOutput{BVPath(T, std::move(nodes)), std::move(diags), grid.h,
                     "direct"};
}

SweepOutput play(const Vec& z0, const BVPath& u, const ConvexSet& z,
                 const Grid& grid) {
  if (z0.size() != u.dim())
    throw DimensionMismatch("initial state dimension differs from input");
  if (distanceTo(z, z0) > kInitTol)
    throw InvalidInitialState("z0 is not in the characteristic set");
  const SetPath c = SetPath::translatePath(u, z);
  return catchingUp(c, u.at(0.0) - z0, grid);
}

std::pair<BVPath, BVPath> stopAndQ(const Vec& z0, const BVPath& u,
                                   const BVPath& y) {
  if (u.dim() != y.dim() || z0.size() != u.dim())
    throw GridMismatch("input and output dimensions differ");
  if (u.horizon() != y.horizon())
    throw GridMismatch("input and output horizons differ");
  BVPath s = u - y;
  BVPath q = 2.0 * y - u;
  return {std::move(s), std::move(q)};
}

BVPath geodesicSolution(const ConvexSet& a, const ConvexSet& b, const Vec& u0) {
  if (distanceTo(a, u0) > kInitTol)
    throw InvalidInitialState("u0 is not in the starting set");
  const double rho = hausdorffDistance(a, b);
  if (rho == 0.0) return BVPath::constant(1.0, u0);
  const Vec p = project(b, u0);
  const double t0 = std::clamp(1.0 - (u0 - p).norm() / rho, 0.0, 1.0);
  if (t0 >= 1.0) return BVPath::constant(1.0, u0);
  if (t0 <= 0.0) return BVPath::linear(1.0, u0, p);
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, u0, u0});
  nodes.push_back({t0, u0, u0});
  nodes.push_back({1.0, p, p});
  return BVPath(1.0, std::move(nodes));
}

SweepOutput playViaReparam(const Vec& z0, const BVPath& u, const ConvexSet& z,
                           const Grid& grid) {
  if (z0.size() != u.dim())
    throw DimensionMismatch("initial state dimension differs from input");
  if (distanceTo(z, z0) > kInitTol)
    throw InvalidInitialState("z0 is not in the characteristic set");
  GeodesicFill fill = fillGeodesics(SetPath::translatePath(u, z));
  const Grid sigmaGrid =
      Grid::withStep(u.horizon(), grid.h, fill.ctilde.nodeTimes());
  SweepOutput lifted = catchingUp(fill.ctilde, u.at(0.0) - z0, sigmaGrid);
  BVPath y = compose(lifted.trajectory, fill.ell);
  return SweepOutput{std::move(y), std::move(lifted.residuals), grid.h,
                     "reparam"};
}

BVPath rateTransform(const BVPath& u, const NondecreasingMap& gamma) {
  if (!gamma.continuous())
    throw JumpyReparametrization("time reparametrization must be continuous");
  const double tol = kTimeMergeTol * std::max(1.0, u.horizon());
  if (std::abs(gamma.at(0.0)) > tol ||
      std::abs(gamma.at(gamma.horizon()) - u.horizon()) > tol)
    throw RangeMismatch("reparametrization must map [0,T'] onto [0,T]");
  return compose(u, gamma);
}

}  // namespace sweep
