#include "sweep/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sweep {

namespace {

void requireFinite(const Vec& x, const char* what) {
  if (!x.allFinite()) throw Error(std::string(what) + ": non-finite coordinates");
  if (x.size() == 0) throw Error(std::string(what) + ": empty vector");
}

Vec projectHalfSpace(const HalfSpace& h, const Vec& x) {
  const double slack = h.normal.dot(x) - h.offset;
  if (slack <= 0.0) return x;
  return x - (slack / h.normal.squaredNorm()) * h.normal;
}

double maxViolation(const Polyhedron& p, const Vec& x) {
  double worst = 0.0;
  for (const auto& f : p.faces)
    worst = std::max(worst, (f.normal.dot(x) - f.offset) / f.normal.norm());
  return worst;
}

// Cyclic projections onto the faces; with halfspaces this converges to a
// feasible point whenever one exists.
bool feasiblePoint(const Polyhedron& p, int d, Vec* out) {
  Vec x = Vec::Zero(d);
  constexpr double feasTol = 1e-9;
  for (int cycle = 0; cycle < kProjMaxIter; ++cycle) {
    double moved = 0.0;
    for (const auto& f : p.faces) {
      Vec y = projectHalfSpace(f, x);
      moved = std::max(moved, (y - x).norm());
      x = std::move(y);
    }
    if (moved <= kProjTol) break;
  }
  if (maxViolation(p, x) > feasTol) return false;
  *out = x;
  return true;
}

}  // namespace

ConvexSet::ConvexSet(Repr r) : repr_(std::make_shared<const Repr>(std::move(r))) {}

ConvexSet ConvexSet::ball(Vec center, double radius) {
  requireFinite(center, "ball center");
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw Error("ball radius must be finite and >= 0");
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::point(Vec p) { return ball(std::move(p), 0.0); }

ConvexSet ConvexSet::box(Vec lower, Vec upper) {
  requireFinite(lower, "box lower");
  requireFinite(upper, "box upper");
  if (lower.size() != upper.size())
    throw DimensionMismatch("box bounds have different dimensions");
  if (((upper - lower).array() < 0.0).any())
    throw Error("box requires lower <= upper componentwise");
  return ConvexSet(Box{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::interval(double lo, double hi) {
  return box(vec1(lo), vec1(hi));
}

ConvexSet ConvexSet::halfSpace(Vec normal, double offset) {
  requireFinite(normal, "halfspace normal");
  if (normal.norm() == 0.0) throw Error("halfspace normal must be nonzero");
  if (!std::isfinite(offset)) throw Error("halfspace offset must be finite");
  return ConvexSet(HalfSpace{std::move(normal), offset});
}

ConvexSet ConvexSet::polyhedron(std::vector<HalfSpace> faces) {
  if (faces.empty()) throw Error("polyhedron requires at least one face");
  const auto d = faces.front().normal.size();
  for (const auto& f : faces) {
    requireFinite(f.normal, "polyhedron face normal");
    if (f.normal.size() != d)
      throw DimensionMismatch("polyhedron faces have mixed dimensions");
    if (f.normal.norm() == 0.0) throw Error("polyhedron face normal must be nonzero");
    if (!std::isfinite(f.offset)) throw Error("polyhedron face offset must be finite");
  }
  Polyhedron p{std::move(faces)};
  Vec witness;
  if (!feasiblePoint(p, static_cast<int>(d), &witness))
    throw InfeasibleSet("polyhedron is empty (feasibility solve failed)");
  return ConvexSet(std::move(p));
}

ConvexSet ConvexSet::translate(ConvexSet base, Vec shift) {
  requireFinite(shift, "translate shift");
  if (shift.size() != base.dim())
    throw DimensionMismatch("translate shift dimension differs from base");
  return ConvexSet(Translate{std::make_shared<const ConvexSet>(std::move(base)),
                             std::move(shift)});
}

ConvexSet ConvexSet::dilation(ConvexSet base, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw Error("dilation radius must be finite and >= 0");
  return ConvexSet(Dilation{std::make_shared<const ConvexSet>(std::move(base)), radius});
}

ConvexSet ConvexSet::dilationIntersection(ConvexSet a, double ra, ConvexSet b,
                                          double rb) {
  if (!(ra >= 0.0) || !(rb >= 0.0) || !std::isfinite(ra) || !std::isfinite(rb))
    throw Error("dilation radii must be finite and >= 0");
  if (a.dim() != b.dim())
    throw DimensionMismatch("dilation intersection components differ in dimension");
  return ConvexSet(DilationIntersection{
      std::make_shared<const ConvexSet>(std::move(a)), ra,
      std::make_shared<const ConvexSet>(std::move(b)), rb});
}

int ConvexSet::dim() const {
  return std::visit(
      [](const auto& r) -> int {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(r.center.size());
        if constexpr (std::is_same_v<T, Box>) return static_cast<int>(r.lower.size());
        if constexpr (std::is_same_v<T, HalfSpace>) return static_cast<int>(r.normal.size());
        if constexpr (std::is_same_v<T, Polyhedron>)
          return static_cast<int>(r.faces.front().normal.size());
        if constexpr (std::is_same_v<T, Translate>) return static_cast<int>(r.shift.size());
        if constexpr (std::is_same_v<T, Dilation>) return r.base->dim();
        if constexpr (std::is_same_v<T, DilationIntersection>) return r.a->dim();
      },
      *repr_);
}

std::optional<Vec> ConvexSet::singleton() const {
  if (const auto* b = std::get_if<Ball>(&*repr_)) {
    if (b->radius == 0.0) return b->center;
    return std::nullopt;
  }
  if (const auto* b = std::get_if<Box>(&*repr_)) {
    if (b->lower == b->upper) return b->lower;
    return std::nullopt;
  }
  if (const auto* t = std::get_if<Translate>(&*repr_)) {
    if (auto p = t->base->singleton()) return t->shift - *p;
    return std::nullopt;
  }
  if (const auto* d = std::get_if<Dilation>(&*repr_)) {
    if (d->radius == 0.0) return d->base->singleton();
    return std::nullopt;
  }
  return std::nullopt;
}

namespace {

Vec projectImpl(const ConvexSet::Repr& repr, const Vec& x);

Vec dykstraTwoSets(const ConvexSet& a, double ra, const ConvexSet& b, double rb,
                   const Vec& x) {
  Vec z = x;
  Vec pa = Vec::Zero(x.size());
  Vec pb = Vec::Zero(x.size());
  for (int cycle = 0; cycle < kProjMaxIter; ++cycle) {
    double moved = 0.0;
    Vec y = projectDilation(a, ra, z + pa);
    pa = z + pa - y;
    moved = std::max(moved, (y - z).norm());
    z = std::move(y);
    y = projectDilation(b, rb, z + pb);
    pb = z + pb - y;
    moved = std::max(moved, (y - z).norm());
    z = std::move(y);
    if (moved <= kProjTol) return z;
  }
  throw NonConvergence("Dykstra did not reach tolerance on dilation intersection");
}

Vec dykstraPolyhedron(const Polyhedron& p, const Vec& x) {
  const auto m = p.faces.size();
  Vec z = x;
  std::vector<Vec> corr(m, Vec::Zero(x.size()));
  for (int cycle = 0; cycle < kProjMaxIter; ++cycle) {
    double moved = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Vec y = projectHalfSpace(p.faces[i], z + corr[i]);
      corr[i] = z + corr[i] - y;
      moved = std::max(moved, (y - z).norm());
      z = std::move(y);
    }
    if (moved <= kProjTol) return z;
  }
  throw NonConvergence("Dykstra did not reach tolerance on polyhedron");
}

Vec projectImpl(const ConvexSet::Repr& repr, const Vec& x) {
  return std::visit(
      [&x](const auto& r) -> Vec {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const Vec delta = x - r.center;
          const double n = delta.norm();
          if (n <= r.radius) return x;
          if (n == 0.0) return r.center;  // radius 0
          return r.center + (r.radius / n) * delta;
        }
        if constexpr (std::is_same_v<T, Box>) {
          return x.cwiseMax(r.lower).cwiseMin(r.upper);
        }
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return projectHalfSpace(r, x);
        }
        if constexpr (std::is_same_v<T, Polyhedron>) {
          if (r.faces.size() == 1) return projectHalfSpace(r.faces.front(), x);
          return dykstraPolyhedron(r, x);
        }
        if constexpr (std::is_same_v<T, Translate>) {
          // Proj_{s - K}(x) = s - Proj_K(s - x)
          return r.shift - project(*r.base, r.shift - x);
        }
        if constexpr (std::is_same_v<T, Dilation>) {
          return projectDilation(*r.base, r.radius, x);
        }
        if constexpr (std::is_same_v<T, DilationIntersection>) {
          // Touching singletons yield a one-point intersection that Dykstra
          // approaches only sublinearly; resolve those in closed form.
          const auto sa = r.a->singleton();
          const auto sb = r.b->singleton();
          if (sa && sb) {
            const double dist = (*sb - *sa).norm();
            if (dist > 0.0 && std::abs(r.ra + r.rb - dist) <= 1e-12 * std::max(1.0, dist))
              return *sa + (r.ra / dist) * (*sb - *sa);
          }
          return dykstraTwoSets(*r.a, r.ra, *r.b, r.rb, x);
        }
      },
      repr);
}

}  // namespace

Vec project(const ConvexSet& k, const Vec& x) {
  if (x.size() != k.dim())
    throw DimensionMismatch("projection argument dimension differs from set");
  if (!x.allFinite()) throw Error("projection argument has non-finite coordinates");
  return projectImpl(k.repr(), x);
}

double distanceTo(const ConvexSet& k, const Vec& x) {
  return (x - project(k, x)).norm();
}

bool contains(const ConvexSet& k, const Vec& x, double tol) {
  return distanceTo(k, x) <= tol;
}

Vec projectDilation(const ConvexSet& base, double radius, const Vec& x) {
  const Vec p = project(base, x);
  const Vec delta = x - p;
  const double dist = delta.norm();
  if (dist <= radius) return x;
  return p + (radius / dist) * delta;
}

double normalConeResidual(const ConvexSet& k, const Vec& x, const Vec& v) {
  return (project(k, x + v) - x).norm();
}

bool normalConeContains(const ConvexSet& k, const Vec& x, const Vec& v,
                        double tol) {
  if (distanceTo(k, x) > tol)
    throw PointNotInSet("normal cone base point is not in the set");
  return normalConeResidual(k, x, v) <= tol;
}

namespace {

bool vecEqual(const Vec& a, const Vec& b) {
  return a.size() == b.size() && a == b;
}

double boxDistance(const Box& b, const Vec& x) {
  const Vec clamped = x.cwiseMax(b.lower).cwiseMin(b.upper);
  return (x - clamped).norm();
}

// sup_{a in A} dist(a, B): the supremum of a convex function over a box is
// attained at a vertex, so enumerate them.
double boxOneSided(const Box& from, const Box& to) {
  const int d = static_cast<int>(from.lower.size());
  if (d > 24) throw UnsupportedPair("box Hausdorff distance limited to dimension 24");
  double worst = 0.0;
  Vec v(d);
  const std::uint64_t count = std::uint64_t{1} << d;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int i = 0; i < d; ++i)
      v[i] = (mask >> i) & 1 ? from.upper[i] : from.lower[i];
    worst = std::max(worst, boxDistance(to, v));
  }
  return worst;
}

}  // namespace

bool structurallyEqual(const ConvexSet& a, const ConvexSet& b) {
  const auto& ra = a.repr();
  const auto& rb = b.repr();
  if (ra.index() != rb.index()) return false;
  if (const auto* x = std::get_if<Ball>(&ra))
    return x->radius == std::get<Ball>(rb).radius &&
           vecEqual(x->center, std::get<Ball>(rb).center);
  if (const auto* x = std::get_if<Box>(&ra))
    return vecEqual(x->lower, std::get<Box>(rb).lower) &&
           vecEqual(x->upper, std::get<Box>(rb).upper);
  if (const auto* x = std::get_if<HalfSpace>(&ra))
    return x->offset == std::get<HalfSpace>(rb).offset &&
           vecEqual(x->normal, std::get<HalfSpace>(rb).normal);
  if (const auto* x = std::get_if<Polyhedron>(&ra)) {
    const auto& y = std::get<Polyhedron>(rb);
    if (x->faces.size() != y.faces.size()) return false;
    for (std::size_t i = 0; i < x->faces.size(); ++i)
      if (x->faces[i].offset != y.faces[i].offset ||
          !vecEqual(x->faces[i].normal, y.faces[i].normal))
        return false;
    return true;
  }
  if (const auto* x = std::get_if<Translate>(&ra)) {
    const auto& y = std::get<Translate>(rb);
    return vecEqual(x->shift, y.shift) &&
           (x->base == y.base || structurallyEqual(*x->base, *y.base));
  }
  if (const auto* x = std::get_if<Dilation>(&ra)) {
    const auto& y = std::get<Dilation>(rb);
    return x->radius == y.radius &&
           (x->base == y.base || structurallyEqual(*x->base, *y.base));
  }
  const auto& x = std::get<DilationIntersection>(ra);
  const auto& y = std::get<DilationIntersection>(rb);
  return x.ra == y.ra && x.rb == y.rb &&
         (x.a == y.a || structurallyEqual(*x.a, *y.a)) &&
         (x.b == y.b || structurallyEqual(*x.b, *y.b));
}

double hausdorffDistance(const ConvexSet& a, const ConvexSet& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("Hausdorff distance of sets in different dimensions");
  if (structurallyEqual(a, b)) return 0.0;

  const auto sa = a.singleton();
  const auto sb = b.singleton();
  if (sa && sb) return (*sa - *sb).norm();

  const auto& ra = a.repr();
  const auto& rb = b.repr();
  if (const auto* x = std::get_if<Ball>(&ra)) {
    if (const auto* y = std::get_if<Ball>(&rb))
      return (x->center - y->center).norm() + std::abs(x->radius - y->radius);
  }
  if (const auto* x = std::get_if<Box>(&ra)) {
    if (const auto* y = std::get_if<Box>(&rb))
      return std::max(boxOneSided(*x, *y), boxOneSided(*y, *x));
  }
  if (const auto* x = std::get_if<Translate>(&ra)) {
    if (const auto* y = std::get_if<Translate>(&rb)) {
      if (x->base == y->base || structurallyEqual(*x->base, *y->base))
        return (x->shift - y->shift).norm();
    }
  }
  throw UnsupportedPair("no exact Hausdorff distance formula for this pair");
}

ConvexSet geodesicSet(const ConvexSet& a, const ConvexSet& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw OutOfDomain("geodesic parameter outside [0,1]");
  const double rho = hausdorffDistance(a, b);
  if (rho == 0.0 || t == 0.0) return a;
  if (t == 1.0) return b;
  const auto sa = a.singleton();
  const auto sb = b.singleton();
  if (sa && sb) return ConvexSet::point(*sa + t * (*sb - *sa));
  return ConvexSet::dilationIntersection(a, t * rho, b, (1.0 - t) * rho);
}

}  // namespace sweep
