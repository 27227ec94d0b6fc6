#ifndef SWEEP_CORPUS_HPP
#define SWEEP_CORPUS_HPP

#include <string>
#include <vector>

#include "sweep/bv_path.hpp"
#include "sweep/convex_set.hpp"

namespace sweep {

/// One regression problem: characteristic set, admissible initial state,
/// and driving input.
struct CorpusItem {
  std::string name;
  ConvexSet z;
  Vec z0;
  BVPath u;
  bool lipschitz;  // continuous piecewise-linear input
};

/// The fixed regression corpus shared by the verification CLI and the test
/// suites: scalar ramps and jumps, planar circle/diamond sweeps, a
/// polyhedral characteristic, and 3-D items.
std::vector<CorpusItem> builtinCorpus();

}  // namespace sweep

#endif
