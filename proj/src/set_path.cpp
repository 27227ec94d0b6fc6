#include "sweep/set_path.hpp"

#include <algorithm>
#include <cmath>

namespace sweep {

namespace {

double pieceLength(const SetPath::Piece& p) {
  if (const auto* t = std::get_if<SetPath::TranslatePiece>(&p.shape))
    return (t->to - t->from).norm();
  return std::get<SetPath::GeodesicPiece>(p.shape).rho;
}

ConvexSet pieceValue(const SetPath::Piece& p,
                     const std::optional<ConvexSet>& z, double s) {
  const double lambda =
      p.s1 > p.s0 ? std::clamp((s - p.s0) / (p.s1 - p.s0), 0.0, 1.0) : 0.0;
  if (const auto* t = std::get_if<SetPath::TranslatePiece>(&p.shape)) {
    const Vec shift = t->from + lambda * (t->to - t->from);
    return ConvexSet::translate(*z, shift);
  }
  const auto& g = std::get<SetPath::GeodesicPiece>(p.shape);
  return geodesicSet(g.a, g.b, lambda);
}

}  // namespace

SetPath SetPath::translatePath(BVPath u, ConvexSet characteristic) {
  if (u.dim() != characteristic.dim())
    throw DimensionMismatch("driver and characteristic set dimensions differ");
  return SetPath(TranslateRep{std::move(u), std::move(characteristic)});
}

SetPath SetPath::geodesicConnect(ConvexSet a, ConvexSet b) {
  const double rho = hausdorffDistance(a, b);  // throws on unsupported pairs
  std::vector<Piece> pieces;
  pieces.push_back({0.0, 1.0, GeodesicPiece{std::move(a), std::move(b), rho}});
  return SetPath(FilledRep{1.0, std::nullopt, std::move(pieces)});
}

SetPath SetPath::filled(double horizon, std::optional<ConvexSet> characteristic,
                        std::vector<Piece> pieces) {
  if (pieces.empty()) throw Error("filled set path needs at least one piece");
  if (pieces.front().s0 != 0.0 || pieces.back().s1 != horizon)
    throw Error("filled pieces must cover [0, T]");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].s1 > pieces[i].s0))
      throw Error("filled pieces must have positive length");
    if (i > 0 && pieces[i].s0 != pieces[i - 1].s1)
      throw Error("filled pieces must be contiguous");
    if (std::holds_alternative<TranslatePiece>(pieces[i].shape) &&
        !characteristic)
      throw Error("translate pieces require a characteristic set");
  }
  return SetPath(FilledRep{horizon, std::move(characteristic), std::move(pieces)});
}

double SetPath::horizon() const {
  if (const auto* t = std::get_if<TranslateRep>(&rep_)) return t->u.horizon();
  return std::get<FilledRep>(rep_).horizon;
}

int SetPath::dim() const {
  if (const auto* t = std::get_if<TranslateRep>(&rep_)) return t->u.dim();
  const auto& f = std::get<FilledRep>(rep_);
  if (const auto* g = std::get_if<GeodesicPiece>(&f.pieces.front().shape))
    return g->a.dim();
  return f.z->dim();
}

ConvexSet SetPath::at(double t) const {
  if (const auto* tr = std::get_if<TranslateRep>(&rep_))
    return ConvexSet::translate(tr->z, tr->u.at(t));
  const auto& f = std::get<FilledRep>(rep_);
  auto it = std::upper_bound(
      f.pieces.begin(), f.pieces.end(), t,
      [](double v, const Piece& p) { return v < p.s1; });
  if (it == f.pieces.end()) --it;
  return pieceValue(*it, f.z, t);
}

ConvexSet SetPath::leftLimit(double t) const {
  if (const auto* tr = std::get_if<TranslateRep>(&rep_))
    return ConvexSet::translate(tr->z, tr->u.leftLimit(t));
  return at(t);  // filled paths are continuous
}

std::vector<double> SetPath::nodeTimes() const {
  if (const auto* tr = std::get_if<TranslateRep>(&rep_)) {
    std::vector<double> out;
    out.reserve(tr->u.nodes().size());
    for (const auto& n : tr->u.nodes()) out.push_back(n.t);
    return out;
  }
  const auto& f = std::get<FilledRep>(rep_);
  std::vector<double> out;
  out.reserve(f.pieces.size() + 1);
  out.push_back(0.0);
  for (const auto& p : f.pieces) out.push_back(p.s1);
  return out;
}

std::vector<double> SetPath::jumpTimes() const {
  if (const auto* tr = std::get_if<TranslateRep>(&rep_)) return tr->u.jumpTimes();
  return {};
}

bool SetPath::hasJumps() const {
  if (const auto* tr = std::get_if<TranslateRep>(&rep_)) return tr->u.hasJumps();
  return false;
}

double SetPath::variation(double s, double t) const {
  // d_H(u(a) - Z, u(b) - Z) = |u(a) - u(b)|, so the translate family
  // inherits the driver's variation exactly.
  if (const auto* tr = std::get_if<TranslateRep>(&rep_))
    return tr->u.variation(s, t);
  const auto& f = std::get<FilledRep>(rep_);
  if (!(s <= t)) throw OutOfDomain("variation needs s <= t");
  double total = 0.0;
  for (const auto& p : f.pieces) {
    const double lo = std::max(s, p.s0), hi = std::min(t, p.s1);
    if (hi > lo) {
      const double len = pieceLength(p);
      total += (lo == p.s0 && hi == p.s1) ? len : len * ((hi - lo) / (p.s1 - p.s0));
    }
  }
  return total;
}

bool SetPath::isTranslate() const {
  return std::holds_alternative<TranslateRep>(rep_);
}

const BVPath& SetPath::driver() const {
  return std::get<TranslateRep>(rep_).u;
}

const ConvexSet& SetPath::characteristic() const {
  return std::get<TranslateRep>(rep_).z;
}

bool SetPath::isFilled() const { return std::holds_alternative<FilledRep>(rep_); }

const std::vector<SetPath::Piece>& SetPath::pieces() const {
  return std::get<FilledRep>(rep_).pieces;
}

}  // namespace sweep
