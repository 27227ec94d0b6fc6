#ifndef SWEEP_SET_PATH_HPP
#define SWEEP_SET_PATH_HPP

#include <optional>
#include <variant>
#include <vector>

#include "sweep/bv_path.hpp"
#include "sweep/convex_set.hpp"

namespace sweep {

/// Right-continuous moving convex set C(t) on [0, T].  Two families are
/// representable: the translate family C(t) = u(t) - Z driven by a BVPath,
/// and continuous piecewise paths whose pieces are affine translates or
/// geodesic arcs between two sets (the output of geodesic jump filling).
class SetPath {
 public:
  /// Affine shift sweep: C(s) = interp(from, to) - Z on [s0, s1].
  struct TranslatePiece {
    Vec from, to;
  };
  /// Geodesic arc: C(s) = G_{(a,b)}(lambda(s)) on [s0, s1], rho = d_H(a, b).
  struct GeodesicPiece {
    ConvexSet a, b;
    double rho;
  };
  struct Piece {
    double s0, s1;
    std::variant<TranslatePiece, GeodesicPiece> shape;
  };

  static SetPath translatePath(BVPath u, ConvexSet characteristic);
  /// t -> G_{(a,b)}(t) on [0, 1].
  static SetPath geodesicConnect(ConvexSet a, ConvexSet b);
  static SetPath filled(double horizon, std::optional<ConvexSet> characteristic,
                        std::vector<Piece> pieces);

  double horizon() const;
  int dim() const;

  ConvexSet at(double t) const;
  ConvexSet leftLimit(double t) const;

  /// Times every solver grid must contain (kinks and jumps).
  std::vector<double> nodeTimes() const;
  std::vector<double> jumpTimes() const;
  bool hasJumps() const;

  /// Exact variation in Hausdorff distance over [s, t].
  double variation(double s, double t) const;
  double variation() const { return variation(0.0, horizon()); }

  bool isTranslate() const;
  const BVPath& driver() const;            // translate family only
  const ConvexSet& characteristic() const; // translate family only

  bool isFilled() const;
  const std::vector<Piece>& pieces() const;  // filled family only

 private:
  struct TranslateRep {
    BVPath u;
    ConvexSet z;
  };
  struct FilledRep {
    double horizon;
    std::optional<ConvexSet> z;
    std::vector<Piece> pieces;
  };
  using Rep = std::variant<TranslateRep, FilledRep>;
  explicit SetPath(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

}  // namespace sweep

#endif
