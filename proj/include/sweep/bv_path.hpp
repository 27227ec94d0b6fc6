#ifndef SWEEP_BV_PATH_HPP
#define SWEEP_BV_PATH_HPP

#include <vector>

#include "sweep/errors.hpp"
#include "sweep/vec.hpp"

namespace sweep {

/// Times closer than this are merged when combining node structures.
inline constexpr double kTimeMergeTol = 1e-12;

class NondecreasingMap;

/// Right-continuous piecewise-linear path with finitely many jumps on
/// [0, T].  The value at a node is its right value; between consecutive
/// nodes the path is the affine segment from right(i) to left(i+1).  The
/// left value at t = 0 always equals the right value.
class BVPath {
 public:
  struct Node {
    double t;
    Vec left, right;
  };

  BVPath(double horizon, std::vector<Node> nodes);

  static BVPath constant(double horizon, Vec value);
  static BVPath linear(double horizon, Vec from, Vec to);
  /// Continuous piecewise-linear interpolant of (times[i], values[i]).
  static BVPath piecewiseLinear(std::vector<double> times, std::vector<Vec> values);

  double horizon() const { return horizon_; }
  int dim() const { return static_cast<int>(nodes_.front().right.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }

  /// f(t) = f(t+).  Throws OutOfDomain outside [0, T].
  Vec at(double t) const;
  /// f(t-), with f(0-) = f(0).
  Vec leftLimit(double t) const;

  /// Exact pointwise variation on [s, t]: affine segment lengths plus jump
  /// magnitudes at nodes in (s, t].
  double variation(double s, double t) const;
  double variation() const { return variation(0.0, horizon_); }

  std::vector<double> jumpTimes() const;
  bool hasJumps() const;

  /// sup_t |f(t)| over nodes and one-sided limits (exact for this class).
  double supNorm() const;

 private:
  double horizon_;
  std::vector<Node> nodes_;
  std::size_t segmentIndex(double t) const;
};

BVPath operator+(const BVPath& f, const BVPath& g);
BVPath operator-(const BVPath& f, const BVPath& g);
BVPath operator*(double s, const BVPath& f);
/// Pointwise shift by a constant vector.
BVPath operator+(const BVPath& f, const Vec& c);

/// Nondecreasing right-continuous piecewise-linear map on [0, T] with
/// scalar values; the node layout mirrors BVPath.
class NondecreasingMap {
 public:
  struct Node {
    double t;
    double left, right;
  };

  NondecreasingMap(double horizon, std::vector<Node> nodes);

  static NondecreasingMap identity(double horizon);
  static NondecreasingMap constant(double horizon, double value);
  static NondecreasingMap piecewiseLinear(std::vector<double> times,
                                          std::vector<double> values);

  double horizon() const { return horizon_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  double at(double t) const;
  double leftLimit(double t) const;

  bool continuous() const;
  std::vector<double> jumpTimes() const;
  double rangeMin() const { return nodes_.front().right; }
  double rangeMax() const { return nodes_.back().right; }

  /// One-dimensional BVPath view of the same graph.
  BVPath asPath() const;
  static NondecreasingMap fromPath(const BVPath& p);

 private:
  double horizon_;
  std::vector<Node> nodes_;
  std::size_t segmentIndex(double t) const;
};

/// Normalized arc length t -> T V(f,[0,t]) / V(f,[0,T]); identically 0 when
/// the total variation vanishes.  Shares its discontinuity set with f.
NondecreasingMap arcLength(const BVPath& f);

double dInf(const BVPath& f, const BVPath& g);
/// d_inf + |V(f) - V(g)|.
double dUniformStrict(const BVPath& f, const BVPath& g);
/// d_inf + V(f - g), the BV-norm of the difference.
double bvNormDist(const BVPath& f, const BVPath& g);
double bvNorm(const BVPath& f);

enum class IntervalKind { Closed, Open, ClosedOpen, OpenClosed };

/// Lebesgue-Stieltjes measure of an interval with endpoints c <= d, from the
/// one-sided limit formulas; e.g. the measure of ]c,d] is f(d+) - f(c+).
Vec stieltjes(const BVPath& f, IntervalKind kind, double c, double d);

/// f o h on h's domain.  Node set: h's nodes plus preimages of f's nodes
/// under h; right continuity is preserved.  Throws RangeMismatch when h
/// takes values outside f's domain.
BVPath compose(const BVPath& f, const NondecreasingMap& h);
NondecreasingMap compose(const NondecreasingMap& f, const NondecreasingMap& h);

}  // namespace sweep

#endif
