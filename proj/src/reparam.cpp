#include "sweep/reparam.hpp"

#include <cmath>

namespace sweep {

SegmentFill fillSegments(const BVPath& u) {
  const double T = u.horizon();
  const NondecreasingMap ell = arcLength(u);
  const double V = u.variation();
  if (V == 0.0) {
    return {NondecreasingMap::constant(T, 0.0), BVPath::constant(T, u.at(0.0)), {}};
  }

  const auto& un = u.nodes();
  const auto& ln = ell.nodes();
  std::vector<BVPath::Node> out;
  std::vector<GapInterval> gaps;
  out.reserve(un.size() + 4);

  // Push a node of utilde at sigma; constancy intervals of u collapse to a
  // point of sigma, in which case the values agree and the push is a no-op.
  auto push = [&out](double sigma, const Vec& value) {
    if (!out.empty() && out.back().t == sigma) return;
    out.push_back({sigma, value, value});
  };

  for (std::size_t i = 0; i < un.size(); ++i) {
    push(ln[i].left, un[i].left);
    if (ln[i].right > ln[i].left) {
      gaps.push_back({ln[i].left, ln[i].right, un[i].t});
      push(ln[i].right, un[i].right);
    }
  }
  return {ell, BVPath(T, std::move(out)), std::move(gaps)};
}

GeodesicFill fillGeodesics(const SetPath& c) {
  if (!c.isTranslate()) {
    // The filled classes are continuous with constant speed, so arc length
    // is the identity (or zero on a constant path) and nothing to fill.
    const double T = c.horizon();
    const double V = c.variation();
    auto ell = V == 0.0 ? NondecreasingMap::constant(T, 0.0)
                        : NondecreasingMap::identity(T);
    return {std::move(ell), c, {}};
  }

  const BVPath& u = c.driver();
  const ConvexSet& z = c.characteristic();
  SegmentFill fill = fillSegments(u);
  const double T = u.horizon();
  if (u.variation() == 0.0) {
    std::vector<SetPath::Piece> pieces;
    pieces.push_back({0.0, T, SetPath::TranslatePiece{u.at(0.0), u.at(0.0)}});
    return {std::move(fill.ell), SetPath::filled(T, z, std::move(pieces)), {}};
  }

  const auto& nodes = fill.utilde.nodes();
  std::vector<SetPath::Piece> pieces;
  pieces.reserve(nodes.size());
  std::size_t gapIdx = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double s0 = nodes[i].t, s1 = nodes[i + 1].t;
    const bool isGap = gapIdx < fill.gaps.size() &&
                       fill.gaps[gapIdx].sigma0 == s0 &&
                       fill.gaps[gapIdx].sigma1 == s1;
    if (isGap) {
      ++gapIdx;
      ConvexSet a = ConvexSet::translate(z, nodes[i].right);
      ConvexSet b = ConvexSet::translate(z, nodes[i + 1].left);
      const double rho = (nodes[i + 1].left - nodes[i].right).norm();
      pieces.push_back({s0, s1, SetPath::GeodesicPiece{std::move(a), std::move(b), rho}});
    } else {
      pieces.push_back({s0, s1, SetPath::TranslatePiece{nodes[i].right, nodes[i + 1].left}});
    }
  }
  return {std::move(fill.ell), SetPath::filled(T, z, std::move(pieces)),
          std::move(fill.gaps)};
}

double constantSpeedCheck(const BVPath& utilde, double totalVariation,
                          double horizon) {
  if (totalVariation == 0.0) return 0.0;
  const double target = totalVariation / horizon;
  double worst = 0.0;
  const auto& nodes = utilde.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double ds = nodes[i + 1].t - nodes[i].t;
    const double speed = (nodes[i + 1].left - nodes[i].right).norm() / ds;
    worst = std::max(worst, std::abs(speed - target));
  }
  return worst;
}

}  // namespace sweep
