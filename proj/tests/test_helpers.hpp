#ifndef SWEEP_TEST_HELPERS_HPP
#define SWEEP_TEST_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "sweep/convex_set.hpp"

namespace sweep::testing {

// Platform-stable uniform draw.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

inline Vec randomVec(std::mt19937_64& rng, int dim, double lo, double hi) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

// Sample a point of k by projecting a random draw, optionally averaged with
// another member to reach the interior.
inline Vec samplePoint(std::mt19937_64& rng, const ConvexSet& k, double radius = 4.0) {
  const Vec a = project(k, randomVec(rng, k.dim(), -radius, radius));
  const Vec b = project(k, randomVec(rng, k.dim(), -radius, radius));
  const double lambda = uniform(rng, 0.0, 1.0);
  return a + lambda * (b - a);
}

// Independent brute-force projection oracle: dense grid search over
// [-span, span]^d keeping the feasible point closest to x.
inline Vec gridSearchProject(const ConvexSet& k, const Vec& x, double span,
                             int pointsPerAxis, double feasTol = 1e-9) {
  const int d = k.dim();
  std::vector<int> idx(d, 0);
  Vec best;
  double bestDist = std::numeric_limits<double>::infinity();
  Vec candidate(d);
  while (true) {
    for (int i = 0; i < d; ++i)
      candidate[i] = -span + 2.0 * span * idx[i] / (pointsPerAxis - 1);
    if (distanceTo(k, candidate) <= feasTol) {
      const double dist = (candidate - x).norm();
      if (dist < bestDist) {
        bestDist = dist;
        best = candidate;
      }
    }
    int axis = 0;
    while (axis < d && ++idx[axis] == pointsPerAxis) idx[axis++] = 0;
    if (axis == d) break;
  }
  return best;
}

// Approximate support value sup_{p in k} <dir, p> by projected ascent with a
// decreasing step; every projection starts near the set, which keeps the
// iterative oracles fast.  Bias is on the order of the final step size.
inline double approxSupport(const ConvexSet& k, const Vec& dir) {
  Vec p = project(k, Vec(Vec::Zero(k.dim())));
  for (double step : {1.0, 0.3, 0.1, 0.03, 0.01}) {
    for (int i = 0; i < 60; ++i) p = project(k, Vec(p + step * dir));
  }
  return dir.dot(p);
}

}  // namespace sweep::testing

#endif
