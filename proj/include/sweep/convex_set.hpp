#ifndef SWEEP_CONVEX_SET_HPP
#define SWEEP_CONVEX_SET_HPP

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sweep/errors.hpp"
#include "sweep/vec.hpp"

namespace sweep {

/// Stopping tolerance for iterative projections (Dykstra).
inline constexpr double kProjTol = 1e-10;
/// Cycle limit for iterative projections.
inline constexpr int kProjMaxIter = 10'000;

class ConvexSet;

struct Ball {
  Vec center;
  double radius;  // >= 0; radius 0 encodes a singleton
};

struct Box {
  Vec lower, upper;  // componentwise lower <= upper
};

/// {x : <normal, x> <= offset}, normal != 0.
struct HalfSpace {
  Vec normal;
  double offset;
};

struct Polyhedron {
  std::vector<HalfSpace> faces;
};

/// {shift - z : z in base}.  This is the reflected translate u - Z that
/// drives the play operator; the reflection is baked in at construction.
struct Translate {
  std::shared_ptr<const ConvexSet> base;
  Vec shift;
};

/// Minkowski sum base + D_r with D_r the closed ball of radius r at 0.
struct Dilation {
  std::shared_ptr<const ConvexSet> base;
  double radius;
};

/// (a + D_ra) \cap (b + D_rb).  Nonempty whenever ra + rb >= d_H(a, b),
/// which holds for instances built through geodesicSet.
struct DilationIntersection {
  std::shared_ptr<const ConvexSet> a;
  double ra;
  std::shared_ptr<const ConvexSet> b;
  double rb;
};

/// Immutable closed convex set with a projection oracle.  Copies are cheap
/// (shared representation) and all operations are pure, so values can be
/// used concurrently without synchronization.
class ConvexSet {
 public:
  using Repr = std::variant<Ball, Box, HalfSpace, Polyhedron, Translate,
                            Dilation, DilationIntersection>;

  static ConvexSet ball(Vec center, double radius);
  static ConvexSet point(Vec p);  // Ball of radius 0
  static ConvexSet box(Vec lower, Vec upper);
  static ConvexSet interval(double lo, double hi);  // 1-D box
  static ConvexSet halfSpace(Vec normal, double offset);
  /// Throws InfeasibleSet when the faces have empty intersection.
  static ConvexSet polyhedron(std::vector<HalfSpace> faces);
  static ConvexSet translate(ConvexSet base, Vec shift);
  static ConvexSet dilation(ConvexSet base, double radius);
  static ConvexSet dilationIntersection(ConvexSet a, double ra, ConvexSet b,
                                        double rb);

  int dim() const;
  const Repr& repr() const { return *repr_; }

  /// The unique member point when the representation is a singleton.
  std::optional<Vec> singleton() const;

 private:
  explicit ConvexSet(Repr r);
  std::shared_ptr<const Repr> repr_;
};

/// Nearest point of k to x.  Closed form for ball/box/halfspace/translate/
/// dilation; Dykstra's alternating projections for polyhedron and
/// dilation intersections (throws NonConvergence past the cycle limit).
Vec project(const ConvexSet& k, const Vec& x);

double distanceTo(const ConvexSet& k, const Vec& x);

bool contains(const ConvexSet& k, const Vec& x, double tol = kProjTol);

/// Projection onto base + D_r: identity within distance r of base, else
/// p + r (x - p)/|x - p| with p the base projection of x.
Vec projectDilation(const ConvexSet& base, double radius, const Vec& x);

/// Membership test v in N_k(x) through N_k(x) = Proj_k^{-1}(x) - x.
/// Requires dist(x, k) <= tol (throws PointNotInSet otherwise).
bool normalConeContains(const ConvexSet& k, const Vec& x, const Vec& v,
                        double tol);

/// |project(k, x + v) - x|, the quantity thresholded by normalConeContains.
double normalConeResidual(const ConvexSet& k, const Vec& x, const Vec& v);

/// Exact Hausdorff distance for the supported pairs: two translates of one
/// base, two balls, two boxes, two singletons, structurally equal sets.
/// Throws UnsupportedPair otherwise.
double hausdorffDistance(const ConvexSet& a, const ConvexSet& b);

/// Geodesic between a and b at parameter t in [0,1]:
/// (a + D_{t rho}) \cap (b + D_{(1-t) rho}) with rho = d_H(a, b).
/// Returns a at t = 0 (and whenever rho = 0) and b at t = 1.
ConvexSet geodesicSet(const ConvexSet& a, const ConvexSet& b, double t);

/// Exact structural comparison of representations.
bool structurallyEqual(const ConvexSet& a, const ConvexSet& b);

}  // namespace sweep

#endif
