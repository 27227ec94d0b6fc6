#ifndef SWEEP_REPARAM_HPP
#define SWEEP_REPARAM_HPP

#include <vector>

#include "sweep/bv_path.hpp"
#include "sweep/set_path.hpp"

namespace sweep {

/// A jump of the original path occupies [sigma0, sigma1] in reparametrized
/// time; the arc-length image misses exactly the half-open ]sigma0, sigma1].
struct GapInterval {
  double sigma0, sigma1;
  double jumpTime;
};

struct SegmentFill {
  NondecreasingMap ell;
  BVPath utilde;
  std::vector<GapInterval> gaps;
};

/// Arc-length reparametrization with affine jump filling: utilde is the
/// Lipschitz path with u = utilde o ell, constant speed V(u)/T, and affine
/// segments from u(t-) to u(t) across each jump gap.  When V(u) = 0 the map
/// ell is identically 0 and utilde is the constant u(0).
SegmentFill fillSegments(const BVPath& u);

struct GeodesicFill {
  NondecreasingMap ell;
  SetPath ctilde;
  std::vector<GapInterval> gaps;
};

/// Set-valued analogue of fillSegments: jumps of C are filled with the
/// dilation-intersection geodesic between C(t-) and C(t); on the image of
/// ell the filled path is the translate of the filled driver.
GeodesicFill fillGeodesics(const SetPath& c);

/// Max over segments of | |slope| - V/T |; zero (up to representation
/// rounding) for paths produced by fillSegments with V > 0.
double constantSpeedCheck(const BVPath& utilde, double totalVariation,
                          double horizon);

}  // namespace sweep

#endif
