#ifndef SWEEP_SOLVER_HPP
#define SWEEP_SOLVER_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sweep/bv_path.hpp"
#include "sweep/convex_set.hpp"
#include "sweep/reparam.hpp"
#include "sweep/set_path.hpp"

namespace sweep {

/// Initial-state tolerance for z0 in Z and u0 in A.
inline constexpr double kInitTol = 1e-8;

/// Discretization times 0 = tau_0 < ... < tau_N = T.  Every node of the
/// driving data must be a grid time so that jumps land on the grid exactly.
struct Grid {
  std::vector<double> times;
  double h;  // max step

  static Grid withStep(double horizon, double step,
                       std::span<const double> mandatory);
  static Grid fromTimes(std::vector<double> times);
};

struct StepDiagnostics {
  double time;
  double constraintDist;       // dist(y(tau_k), C(tau_k))
  double normalConeResidual;   // re-projection residual of -Delta y
  bool atJump;
};

struct SweepOutput {
  BVPath trajectory;
  std::vector<StepDiagnostics> residuals;
  double h;
  std::string method;

  double maxConstraintDist() const;
  double maxNormalConeResidual() const;
};

/// Moreau catching-up: y(0) = Proj_{C(0)}(y0), then
/// y_{k+1} = Proj_{C(tau_{k+1})}(y_k).  At a jump time the motion splits
/// into a step onto C(t-) followed by the jump projection onto C(t), so the
/// output jump equals Proj_{C(t)}(y(t-)) exactly.
SweepOutput catchingUp(const SetPath& c, const Vec& y0, const Grid& grid);

/// Play operator with characteristic Z: the sweeping process driven by
/// C_u(t) = u(t) - Z started at y(0) = u(0) - z0.
SweepOutput play(const Vec& z0, const BVPath& u, const ConvexSet& z,
                 const Grid& grid);

/// Stop s = u - y and the reflected output q = 2y - u, as exact path
/// arithmetic on the play output y.
std::pair<BVPath, BVPath> stopAndQ(const Vec& z0, const BVPath& u,
                                   const BVPath& y);

/// Closed-form solution of the sweeping process driven by the geodesic
/// t -> G_{(a,b)}(t) on [0,1] from u0 in a: constant until
/// t0 = 1 - |u0 - Proj_b(u0)| / rho, then affine into Proj_b(u0).
BVPath geodesicSolution(const ConvexSet& a, const ConvexSet& b, const Vec& u0);

/// Reparametrized pipeline: fill the jumps of C_u with geodesics, solve the
/// Lipschitz sweeping process in arc-length time, and compose with ell.
SweepOutput playViaReparam(const Vec& z0, const BVPath& u, const ConvexSet& z,
                           const Grid& grid);

/// u o gamma for a continuous nondecreasing reparametrization with
/// gamma(0) = 0 and gamma(T') = T.
BVPath rateTransform(const BVPath& u, const NondecreasingMap& gamma);

}  // namespace sweep

#endif
