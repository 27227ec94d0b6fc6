#include "sweep/bv_path.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sweep {

namespace {

double mergeTol(double horizon) { return kTimeMergeTol * std::max(1.0, horizon); }

void checkDomain(double t, double horizon, const char* what) {
  if (!(t >= -mergeTol(horizon) && t <= horizon + mergeTol(horizon)))
    throw OutOfDomain(std::string(what) + ": time outside [0, T]");
}

double clampTime(double t, double horizon) {
  return std::clamp(t, 0.0, horizon);
}

// Union of two sorted time lists, collapsing near-duplicates; endpoints are
// pinned to 0 and the horizon exactly.
std::vector<double> mergeTimes(const std::vector<double>& a,
                               const std::vector<double>& b, double horizon) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  const double tol = mergeTol(horizon);
  auto push = [&](double t) {
    if (out.empty() || t - out.back() > tol) out.push_back(t);
  };
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
      push(a[i++]);
    else
      push(b[j++]);
  }
  out.front() = 0.0;
  out.back() = horizon;
  return out;
}

std::vector<double> nodeTimesOf(const BVPath& p) {
  std::vector<double> t;
  t.reserve(p.nodes().size());
  for (const auto& n : p.nodes()) t.push_back(n.t);
  return t;
}

}  // namespace

BVPath::BVPath(double horizon, std::vector<Node> nodes)
    : horizon_(horizon), nodes_(std::move(nodes)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw Error("path horizon must be finite and > 0");
  if (nodes_.size() < 2) throw Error("path needs nodes at 0 and at the horizon");
  if (nodes_.front().t != 0.0) throw Error("first path node must be at t = 0");
  if (nodes_.back().t != horizon_) throw Error("last path node must be at t = T");
  const auto d = nodes_.front().right.size();
  if (d == 0) throw Error("path values must have dimension >= 1");
  double prev = -1.0;
  for (const auto& n : nodes_) {
    if (!(n.t > prev)) throw Error("path node times must be strictly increasing");
    prev = n.t;
    if (n.left.size() != d || n.right.size() != d)
      throw DimensionMismatch("path node values have inconsistent dimensions");
    if (!n.left.allFinite() || !n.right.allFinite())
      throw Error("path node values must be finite");
  }
  if (nodes_.front().left != nodes_.front().right)
    throw Error("left value at t = 0 must equal the right value");
}

BVPath BVPath::constant(double horizon, Vec value) {
  std::vector<Node> nodes;
  nodes.push_back({0.0, value, value});
  nodes.push_back({horizon, value, std::move(value)});
  return BVPath(horizon, std::move(nodes));
}

BVPath BVPath::linear(double horizon, Vec from, Vec to) {
  std::vector<Node> nodes;
  nodes.push_back({0.0, from, from});
  nodes.push_back({horizon, to, std::move(to)});
  return BVPath(horizon, std::move(nodes));
}

BVPath BVPath::piecewiseLinear(std::vector<double> times, std::vector<Vec> values) {
  if (times.size() != values.size()) throw Error("times/values size mismatch");
  if (times.size() < 2) throw Error("piecewise-linear path needs >= 2 breakpoints");
  std::vector<Node> nodes;
  nodes.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    nodes.push_back({times[i], values[i], values[i]});
  return BVPath(times.back(), std::move(nodes));
}

std::size_t BVPath::segmentIndex(double t) const {
  auto it = std::upper_bound(
      nodes_.begin(), nodes_.end(), t,
      [](double v, const Node& n) { return v < n.t; });
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

Vec BVPath::at(double t) const {
  checkDomain(t, horizon_, "eval");
  t = clampTime(t, horizon_);
  const std::size_t i = segmentIndex(t);
  if (nodes_[i].t == t) return nodes_[i].right;
  const double alpha = (t - nodes_[i].t) / (nodes_[i + 1].t - nodes_[i].t);
  return nodes_[i].right + alpha * (nodes_[i + 1].left - nodes_[i].right);
}

Vec BVPath::leftLimit(double t) const {
  checkDomain(t, horizon_, "leftLimit");
  t = clampTime(t, horizon_);
  if (t == 0.0) return nodes_.front().right;
  const std::size_t i = segmentIndex(t);
  if (nodes_[i].t == t) return nodes_[i].left;
  const double alpha = (t - nodes_[i].t) / (nodes_[i + 1].t - nodes_[i].t);
  return nodes_[i].right + alpha * (nodes_[i + 1].left - nodes_[i].right);
}

double BVPath::variation(double s, double t) const {
  if (!(s <= t)) throw OutOfDomain("variation needs s <= t");
  checkDomain(s, horizon_, "variation");
  checkDomain(t, horizon_, "variation");
  s = clampTime(s, horizon_);
  t = clampTime(t, horizon_);
  double total = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i > 0 && nodes_[i].t > s && nodes_[i].t <= t)
      total += (nodes_[i].right - nodes_[i].left).norm();
    if (i + 1 < nodes_.size()) {
      const double a = nodes_[i].t, b = nodes_[i + 1].t;
      const double lo = std::max(s, a), hi = std::min(t, b);
      if (hi > lo) {
        const double len = (nodes_[i + 1].left - nodes_[i].right).norm();
        if (lo == a && hi == b)
          total += len;
        else
          total += len * ((hi - lo) / (b - a));
      }
    }
  }
  return total;
}

std::vector<double> BVPath::jumpTimes() const {
  std::vector<double> out;
  for (const auto& n : nodes_)
    if ((n.right - n.left).norm() > 0.0) out.push_back(n.t);
  return out;
}

bool BVPath::hasJumps() const {
  for (const auto& n : nodes_)
    if ((n.right - n.left).norm() > 0.0) return true;
  return false;
}

double BVPath::supNorm() const {
  double m = 0.0;
  for (const auto& n : nodes_)
    m = std::max({m, n.left.norm(), n.right.norm()});
  return m;
}

namespace {

template <typename Op>
BVPath combine(const BVPath& f, const BVPath& g, Op op, const char* what) {
  if (f.dim() != g.dim())
    throw DimensionMismatch(std::string(what) + ": paths have different dimensions");
  if (std::abs(f.horizon() - g.horizon()) > mergeTol(f.horizon()))
    throw HorizonMismatch(std::string(what) + ": paths have different horizons");
  const double T = f.horizon();
  const auto times = mergeTimes(nodeTimesOf(f), nodeTimesOf(g), T);
  std::vector<BVPath::Node> nodes;
  nodes.reserve(times.size());
  const double Tg = g.horizon();
  for (double t : times) {
    const double tg = clampTime(t, Tg);
    nodes.push_back({t, op(f.leftLimit(t), g.leftLimit(tg)),
                     op(f.at(t), g.at(tg))});
  }
  return BVPath(T, std::move(nodes));
}

}  // namespace

BVPath operator+(const BVPath& f, const BVPath& g) {
  return combine(f, g, [](const Vec& a, const Vec& b) { return Vec(a + b); }, "+");
}

BVPath operator-(const BVPath& f, const BVPath& g) {
  return combine(f, g, [](const Vec& a, const Vec& b) { return Vec(a - b); }, "-");
}

BVPath operator*(double s, const BVPath& f) {
  std::vector<BVPath::Node> nodes;
  nodes.reserve(f.nodes().size());
  for (const auto& n : f.nodes()) nodes.push_back({n.t, s * n.left, s * n.right});
  return BVPath(f.horizon(), std::move(nodes));
}

BVPath operator+(const BVPath& f, const Vec& c) {
  if (c.size() != f.dim()) throw DimensionMismatch("shift dimension mismatch");
  std::vector<BVPath::Node> nodes;
  nodes.reserve(f.nodes().size());
  for (const auto& n : f.nodes()) nodes.push_back({n.t, n.left + c, n.right + c});
  return BVPath(f.horizon(), std::move(nodes));
}

NondecreasingMap::NondecreasingMap(double horizon, std::vector<Node> nodes)
    : horizon_(horizon), nodes_(std::move(nodes)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw Error("map horizon must be finite and > 0");
  if (nodes_.size() < 2) throw Error("map needs nodes at 0 and at the horizon");
  if (nodes_.front().t != 0.0) throw Error("first map node must be at t = 0");
  if (nodes_.back().t != horizon_) throw Error("last map node must be at t = T");
  if (nodes_.front().left != nodes_.front().right)
    throw Error("left value at t = 0 must equal the right value");
  double prevT = -1.0;
  double prevVal = -std::numeric_limits<double>::infinity();
  for (const auto& n : nodes_) {
    if (!(n.t > prevT)) throw Error("map node times must be strictly increasing");
    if (!std::isfinite(n.left) || !std::isfinite(n.right))
      throw Error("map values must be finite");
    if (n.left < prevVal || n.right < n.left)
      throw Error("map values must be nondecreasing");
    prevT = n.t;
    prevVal = n.right;
  }
}

NondecreasingMap NondecreasingMap::identity(double horizon) {
  return NondecreasingMap(horizon, {{0.0, 0.0, 0.0}, {horizon, horizon, horizon}});
}

NondecreasingMap NondecreasingMap::constant(double horizon, double value) {
  return NondecreasingMap(horizon, {{0.0, value, value}, {horizon, value, value}});
}

NondecreasingMap NondecreasingMap::piecewiseLinear(std::vector<double> times,
                                                   std::vector<double> values) {
  if (times.size() != values.size()) throw Error("times/values size mismatch");
  if (times.size() < 2) throw Error("piecewise-linear map needs >= 2 breakpoints");
  std::vector<Node> nodes;
  nodes.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    nodes.push_back({times[i], values[i], values[i]});
  return NondecreasingMap(times.back(), std::move(nodes));
}

std::size_t NondecreasingMap::segmentIndex(double t) const {
  auto it = std::upper_bound(
      nodes_.begin(), nodes_.end(), t,
      [](double v, const Node& n) { return v < n.t; });
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

double NondecreasingMap::at(double t) const {
  checkDomain(t, horizon_, "eval");
  t = clampTime(t, horizon_);
  const std::size_t i = segmentIndex(t);
  if (nodes_[i].t == t) return nodes_[i].right;
  const double alpha = (t - nodes_[i].t) / (nodes_[i + 1].t - nodes_[i].t);
  return nodes_[i].right + alpha * (nodes_[i + 1].left - nodes_[i].right);
}

double NondecreasingMap::leftLimit(double t) const {
  checkDomain(t, horizon_, "leftLimit");
  t = clampTime(t, horizon_);
  if (t == 0.0) return nodes_.front().right;
  const std::size_t i = segmentIndex(t);
  if (nodes_[i].t == t) return nodes_[i].left;
  const double alpha = (t - nodes_[i].t) / (nodes_[i + 1].t - nodes_[i].t);
  return nodes_[i].right + alpha * (nodes_[i + 1].left - nodes_[i].right);
}

bool NondecreasingMap::continuous() const {
  for (const auto& n : nodes_)
    if (n.right != n.left) return false;
  return true;
}

std::vector<double> NondecreasingMap::jumpTimes() const {
  std::vector<double> out;
  for (const auto& n : nodes_)
    if (n.right != n.left) out.push_back(n.t);
  return out;
}

BVPath NondecreasingMap::asPath() const {
  std::vector<BVPath::Node> nodes;
  nodes.reserve(nodes_.size());
  for (const auto& n : nodes_) nodes.push_back({n.t, vec1(n.left), vec1(n.right)});
  return BVPath(horizon_, std::move(nodes));
}

NondecreasingMap NondecreasingMap::fromPath(const BVPath& p) {
  if (p.dim() != 1) throw DimensionMismatch("nondecreasing map must be scalar");
  std::vector<Node> nodes;
  nodes.reserve(p.nodes().size());
  // Tolerate (and clamp away) rounding-level monotonicity violations.
  const double slack = 1e-9 * std::max(1.0, std::abs(p.supNorm()));
  double running = -std::numeric_limits<double>::infinity();
  for (const auto& n : p.nodes()) {
    double l = n.left[0], r = n.right[0];
    if (l < running - slack || r < l - slack)
      throw Error("path is not nondecreasing");
    l = std::max(l, running);
    r = std::max(r, l);
    running = r;
    nodes.push_back({n.t, l, r});
  }
  return NondecreasingMap(p.horizon(), std::move(nodes));
}

NondecreasingMap arcLength(const BVPath& f) {
  const double T = f.horizon();
  const auto& nodes = f.nodes();
  // One pass accumulating jump and segment contributions in time order; the
  // same order as variation(), so the final cum equals variation() exactly.
  std::vector<double> cumLeft(nodes.size()), cumRight(nodes.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cumLeft[i] = cum;
    if (i > 0) cum += (nodes[i].right - nodes[i].left).norm();
    cumRight[i] = cum;
    if (i + 1 < nodes.size())
      cum += (nodes[i + 1].left - nodes[i].right).norm();
  }
  const double V = cumRight.back();
  if (V == 0.0) return NondecreasingMap::constant(T, 0.0);
  std::vector<NondecreasingMap::Node> out;
  out.reserve(nodes.size());
  // Normalize before scaling: cum/V reaches exactly 1, so ell(T) = T.
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out.push_back({nodes[i].t, T * (cumLeft[i] / V), T * (cumRight[i] / V)});
  return NondecreasingMap(T, std::move(out));
}

double dInf(const BVPath& f, const BVPath& g) { return (f - g).supNorm(); }

double dUniformStrict(const BVPath& f, const BVPath& g) {
  return dInf(f, g) + std::abs(f.variation() - g.variation());
}

double bvNormDist(const BVPath& f, const BVPath& g) {
  const BVPath diff = f - g;
  return diff.supNorm() + diff.variation();
}

double bvNorm(const BVPath& f) { return f.supNorm() + f.variation(); }

Vec stieltjes(const BVPath& f, IntervalKind kind, double c, double d) {
  if (!(c <= d)) throw OutOfDomain("stieltjes needs c <= d");
  checkDomain(c, f.horizon(), "stieltjes");
  checkDomain(d, f.horizon(), "stieltjes");
  if (c == d) {
    if (kind == IntervalKind::Closed) return f.at(c) - f.leftLimit(c);
    return Vec::Zero(f.dim());
  }
  switch (kind) {
    case IntervalKind::OpenClosed:
      return f.at(d) - f.at(c);
    case IntervalKind::Closed:
      return f.at(d) - f.leftLimit(c);
    case IntervalKind::ClosedOpen:
      return f.leftLimit(d) - f.leftLimit(c);
    case IntervalKind::Open:
      return f.leftLimit(d) - f.at(c);
  }
  throw Error("unreachable interval kind");
}

namespace {

struct ComposeEvent {
  double s;
  Vec left, right;
  bool fromNode;  // events at h's own nodes win a merge
};

}  // namespace

BVPath compose(const BVPath& f, const NondecreasingMap& h) {
  const double Tf = f.horizon();
  const double Th = h.horizon();
  const double tolR = mergeTol(Tf);
  if (h.rangeMin() < -tolR || h.rangeMax() > Tf + tolR)
    throw RangeMismatch("map range exceeds the path domain");
  auto clampArg = [&](double x) { return clampTime(x, Tf); };

  const auto& hn = h.nodes();
  std::vector<ComposeEvent> events;
  events.reserve(hn.size() + f.nodes().size());

  // Events at h's nodes.  The left value depends on how h approaches its
  // left limit: along an increasing segment the composition picks up f's
  // left limit, along a constant segment it picks up f's value.
  for (std::size_t j = 0; j < hn.size(); ++j) {
    Vec right = f.at(clampArg(hn[j].right));
    Vec left;
    if (j == 0) {
      left = right;
    } else {
      const double a = hn[j - 1].right;
      const double b = hn[j].left;
      left = (b > a) ? f.leftLimit(clampArg(b)) : f.at(clampArg(b));
    }
    events.push_back({hn[j].t, std::move(left), std::move(right), true});
  }

  // Preimages of f's interior nodes under increasing segments of h.
  for (std::size_t j = 0; j + 1 < hn.size(); ++j) {
    const double a = hn[j].right;
    const double b = hn[j + 1].left;
    if (!(b > a)) continue;
    const double s0 = hn[j].t, s1 = hn[j + 1].t;
    for (const auto& fn : f.nodes()) {
      if (fn.t <= a || fn.t >= b) continue;
      const double s = s0 + (fn.t - a) / (b - a) * (s1 - s0);
      events.push_back({s, fn.left, fn.right, false});
    }
  }

  std::sort(events.begin(), events.end(),
            [](const ComposeEvent& x, const ComposeEvent& y) {
              if (x.s != y.s) return x.s < y.s;
              return x.fromNode > y.fromNode;
            });

  const double tolS = mergeTol(Th);
  std::vector<BVPath::Node> nodes;
  nodes.reserve(events.size());
  for (auto& e : events) {
    if (!nodes.empty() && e.s - nodes.back().t <= tolS) {
      // Collapse near-coincident events: earliest left, latest right.
      nodes.back().right = std::move(e.right);
      continue;
    }
    nodes.push_back({e.s, std::move(e.left), std::move(e.right)});
  }
  nodes.front().t = 0.0;
  nodes.back().t = Th;
  nodes.front().left = nodes.front().right;
  return BVPath(Th, std::move(nodes));
}

NondecreasingMap compose(const NondecreasingMap& f, const NondecreasingMap& h) {
  return NondecreasingMap::fromPath(compose(f.asPath(), h));
}

}  // namespace sweep
