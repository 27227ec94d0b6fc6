#ifndef SWEEP_EXPERIMENT_HPP
#define SWEEP_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sweep/bv_path.hpp"
#include "sweep/convex_set.hpp"

namespace sweep {

/// One perturbed input u_n together with its exact input distances.
struct PerturbedInput {
  BVPath u;
  Vec z0;
  double bvDist;   // |u_n - u|_BV, computed exactly
  double dusDist;  // d_us(u_n, u)
};

/// Built-in perturbation families.  All but DusOnly are BV-norm convergent
/// with |u_n - u|_BV ~ 1/n; DusOnly converges uniformly strictly while its
/// BV distance stays bounded away from zero (the contrast case).
enum class Family {
  ConstantShift,
  Amplitude,
  JumpSize,
  Reshape,
  Wiggle,
  DusOnly,
};

std::string familyName(Family f);
std::vector<Family> allFamilies();

/// Throws ConfigError when the family does not apply to the base input
/// (JumpSize needs a jump; DusOnly needs a strictly increasing first
/// coordinate with slope margin).
PerturbedInput perturb(Family family, const BVPath& u, const Vec& z0, int n,
                       std::uint64_t seed);

struct ExperimentRow {
  int n;
  double bvDistIn;
  double dusDistIn;
  double dInfOut;
  double bvDistOut;
  double h;
};

struct FamilyReport {
  Family family;
  bool bvConvergent;  // false marks the flagged d_us-only contrast family
  std::vector<ExperimentRow> rows;
  double fittedC;  // smallest C with |y_n - y|_BV <= C/n + 10h on all rows
};

struct BvContinuityConfig {
  BVPath u;
  Vec z0;
  ConvexSet z;
  std::vector<int> ns;
  double h;
  std::uint64_t seed;
  std::vector<Family> families;
};

/// Default base problem: monotone scalar input with one jump, admitting
/// every built-in family.
BvContinuityConfig defaultBvContinuityConfig();

std::vector<FamilyReport> runBvContinuity(const BvContinuityConfig& config);

}  // namespace sweep

#endif
