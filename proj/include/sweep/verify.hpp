#ifndef SWEEP_VERIFY_HPP
#define SWEEP_VERIFY_HPP

#include <span>
#include <vector>

#include "sweep/bv_path.hpp"
#include "sweep/convex_set.hpp"
#include "sweep/set_path.hpp"
#include "sweep/solver.hpp"

namespace sweep {

/// Membership tolerance for a-posteriori normal cone and constraint checks.
inline constexpr double kCheckTol = 1e-8;

/// Discrete residual of the integral variational inequality: the largest
/// over the test functions of
///   sum_k [ <z_k - u_k + y_k, y(t_{k+1}-) - y_k>
///           + <z_{k+1} - u_{k+1} + y_{k+1}, y(t_{k+1}) - y(t_{k+1}-)> ]
/// on the merged node grid.  Jump increments pair with values at the jump
/// time, matching the atoms of the Stieltjes measure; on continuous cells
/// this reduces to the plain forward-difference sum.  Nonpositive up to
/// O(h) for catching-up outputs.  Throws TestFunctionOutsideZ when some
/// z(t) leaves Z by more than zTol.
double checkIntegralVi(const BVPath& u, const BVPath& y, const ConvexSet& z,
                       std::span<const BVPath> zTests, double zTol = kCheckTol);

/// Number of trajectory increments whose negative is not in the normal cone
/// of the moving set at the arrival point (0 for catching-up outputs;
/// feasibility violations count as failures).
int checkNormalCone(const SetPath& c, const BVPath& trajectory,
                    double tol = kCheckTol);

/// d_inf( P(z0, u o gamma),  P(z0, u) o gamma ) with both sides solved at
/// step h on their own grids.
double checkRateIndependence(const Vec& z0, const BVPath& u, const ConvexSet& z,
                             const NondecreasingMap& gamma, double h);

struct SqDefects {
  double orthogonality;  // max |<ds, dy>| / dtau^2 over included cells
  double speed;          // max | |dq| - |du| | / dtau over included cells
};

/// Discrete counterparts of the a.e. identities for continuous
/// piecewise-linear inputs: the stop and play increments are orthogonal and
/// |q'| = |u'|.  Cells containing input kinks or stick/slip transitions are
/// excluded, mirroring the almost-everywhere statements.
SqDefects checkSqIdentities(const Vec& z0, const BVPath& u, const ConvexSet& z,
                            const Grid& grid);

/// Constant-speed defect of w_hat = 2 M(y0, Ctilde_u) - utilde in arc-length
/// time: max | |slope| - V/T | over cells inside the arc-length image of the
/// continuity set (jump gaps and transition cells excluded).
double checkConstantSpeedW(const Vec& z0, const BVPath& u, const ConvexSet& z,
                           double h);

/// Piecewise-constant Z-valued test functions for the variational
/// inequality: constants, the trajectory u - y itself, and seeded random
/// switching paths.
std::vector<BVPath> standardViTestFunctions(const BVPath& u, const BVPath& y,
                                            const ConvexSet& z,
                                            std::uint64_t seed, int count = 4);

}  // namespace sweep

#endif
