#include "sweep/json_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace sweep {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* name) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(path + "." + name, "missing field");
  return *it;
}

double numberAt(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string format(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

Json toJson(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vecFromJson(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = numberAt(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Json toJson(const ConvexSet& k) {
  return std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>)
          return {{"kind", "ball"}, {"center", toJson(r.center)}, {"radius", r.radius}};
        if constexpr (std::is_same_v<T, Box>)
          return {{"kind", "box"}, {"lower", toJson(r.lower)}, {"upper", toJson(r.upper)}};
        if constexpr (std::is_same_v<T, HalfSpace>)
          return {{"kind", "halfspace"}, {"normal", toJson(r.normal)}, {"offset", r.offset}};
        if constexpr (std::is_same_v<T, Polyhedron>) {
          Json faces = Json::array();
          for (const auto& f : r.faces)
            faces.push_back({{"normal", toJson(f.normal)}, {"offset", f.offset}});
          return {{"kind", "polyhedron"}, {"halfspaces", std::move(faces)}};
        }
        if constexpr (std::is_same_v<T, Translate>)
          return {{"kind", "translate"}, {"base", toJson(*r.base)}, {"shift", toJson(r.shift)}};
        if constexpr (std::is_same_v<T, Dilation>)
          return {{"kind", "dilation"}, {"base", toJson(*r.base)}, {"radius", r.radius}};
        if constexpr (std::is_same_v<T, DilationIntersection>)
          return {{"kind", "dilation_intersection"},
                  {"a", toJson(*r.a)},
                  {"ra", r.ra},
                  {"b", toJson(*r.b)},
                  {"rb", r.rb}};
      },
      k.repr());
}

ConvexSet convexSetFromJson(const Json& j, const std::string& path) {
  const std::string kind = [&] {
    const Json& k = field(j, path, "kind");
    if (!k.is_string()) fail(path + ".kind", "expected a string");
    return k.get<std::string>();
  }();
  try {
    if (kind == "ball") {
      Vec center = vecFromJson(field(j, path, "center"), path + ".center");
      const double radius = numberAt(field(j, path, "radius"), path + ".radius");
      return ConvexSet::ball(std::move(center), radius);
    }
    if (kind == "box") {
      Vec lower = vecFromJson(field(j, path, "lower"), path + ".lower");
      Vec upper = vecFromJson(field(j, path, "upper"), path + ".upper");
      return ConvexSet::box(std::move(lower), std::move(upper));
    }
    if (kind == "halfspace") {
      Vec normal = vecFromJson(field(j, path, "normal"), path + ".normal");
      const double offset = numberAt(field(j, path, "offset"), path + ".offset");
      return ConvexSet::halfSpace(std::move(normal), offset);
    }
    if (kind == "polyhedron") {
      const Json& faces = field(j, path, "halfspaces");
      if (!faces.is_array() || faces.empty())
        fail(path + ".halfspaces", "expected a non-empty array");
      std::vector<HalfSpace> out;
      for (std::size_t i = 0; i < faces.size(); ++i) {
        const std::string fp = path + ".halfspaces[" + std::to_string(i) + "]";
        out.push_back({vecFromJson(field(faces[i], fp, "normal"), fp + ".normal"),
                       numberAt(field(faces[i], fp, "offset"), fp + ".offset")});
      }
      return ConvexSet::polyhedron(std::move(out));
    }
    if (kind == "translate")
      return ConvexSet::translate(
          convexSetFromJson(field(j, path, "base"), path + ".base"),
          vecFromJson(field(j, path, "shift"), path + ".shift"));
    if (kind == "dilation")
      return ConvexSet::dilation(
          convexSetFromJson(field(j, path, "base"), path + ".base"),
          numberAt(field(j, path, "radius"), path + ".radius"));
    if (kind == "dilation_intersection")
      return ConvexSet::dilationIntersection(
          convexSetFromJson(field(j, path, "a"), path + ".a"),
          numberAt(field(j, path, "ra"), path + ".ra"),
          convexSetFromJson(field(j, path, "b"), path + ".b"),
          numberAt(field(j, path, "rb"), path + ".rb"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown set kind '" + kind + "'");
}

Json toJson(const BVPath& p) {
  Json nodes = Json::array();
  for (const auto& n : p.nodes())
    nodes.push_back({{"t", n.t}, {"left", toJson(n.left)}, {"right", toJson(n.right)}});
  return {{"T", p.horizon()}, {"nodes", std::move(nodes)}};
}

BVPath bvPathFromJson(const Json& j, const std::string& path) {
  const double T = numberAt(field(j, path, "T"), path + ".T");
  const Json& jnodes = field(j, path, "nodes");
  if (!jnodes.is_array() || jnodes.empty()) fail(path + ".nodes", "expected a non-empty array");
  std::vector<BVPath::Node> nodes;
  nodes.reserve(jnodes.size());
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string np = path + ".nodes[" + std::to_string(i) + "]";
    nodes.push_back({numberAt(field(jnodes[i], np, "t"), np + ".t"),
                     vecFromJson(field(jnodes[i], np, "left"), np + ".left"),
                     vecFromJson(field(jnodes[i], np, "right"), np + ".right")});
  }
  try {
    return BVPath(T, std::move(nodes));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Json toJson(const NondecreasingMap& m) { return toJson(m.asPath()); }

Grid SolveRequest::makeGrid() const {
  std::vector<double> mandatory;
  for (const auto& n : u.nodes()) mandatory.push_back(n.t);
  if (times) {
    std::vector<double> all = *times;
    all.insert(all.end(), mandatory.begin(), mandatory.end());
    std::sort(all.begin(), all.end());
    const double tol = kTimeMergeTol * std::max(1.0, u.horizon());
    std::vector<double> dedup;
    for (double t : all)
      if (dedup.empty() || t - dedup.back() > tol) dedup.push_back(t);
    return Grid::fromTimes(std::move(dedup));
  }
  return Grid::withStep(u.horizon(), h.value_or(1e-3), mandatory);
}

SolveRequest solveRequestFromJson(const Json& j) {
  SolveRequest r{convexSetFromJson(field(j, "request", "Z"), "Z"),
                 vecFromJson(field(j, "request", "z0"), "z0"),
                 bvPathFromJson(field(j, "request", "u"), "u"),
                 std::nullopt,
                 std::nullopt,
                 "direct"};
  const Json& grid = field(j, "request", "grid");
  if (grid.contains("h")) {
    r.h = numberAt(grid["h"], "grid.h");
    if (!(*r.h > 0.0)) fail("grid.h", "must be > 0");
  } else if (grid.contains("times")) {
    const Json& times = grid["times"];
    if (!times.is_array() || times.size() < 2)
      fail("grid.times", "expected an array with at least two times");
    std::vector<double> out;
    for (std::size_t i = 0; i < times.size(); ++i)
      out.push_back(numberAt(times[i], "grid.times[" + std::to_string(i) + "]"));
    r.times = std::move(out);
  } else {
    fail("grid", "expected either 'h' or 'times'");
  }
  if (j.contains("method")) {
    if (!j["method"].is_string()) fail("method", "expected a string");
    r.method = j["method"].get<std::string>();
    if (r.method != "direct" && r.method != "reparam")
      fail("method", "must be 'direct' or 'reparam'");
  }
  if (r.z.dim() != r.z0.size() || r.z.dim() != r.u.dim())
    fail("request", "Z, z0 and u must share one dimension");
  return r;
}

Json toJson(const SolveRequest& r) {
  Json grid;
  if (r.times)
    grid = {{"times", *r.times}};
  else
    grid = {{"h", r.h.value_or(1e-3)}};
  return {{"Z", toJson(r.z)},
          {"z0", toJson(r.z0)},
          {"u", toJson(r.u)},
          {"grid", std::move(grid)},
          {"method", r.method}};
}

Json toJson(const SweepOutput& out) {
  Json times = Json::array(), constraint = Json::array(), cone = Json::array();
  for (const auto& s : out.residuals) {
    times.push_back(s.time);
    constraint.push_back(s.constraintDist);
    cone.push_back(s.normalConeResidual);
  }
  return {{"trajectory", toJson(out.trajectory)},
          {"residuals",
           {{"times", std::move(times)},
            {"constraint", std::move(constraint)},
            {"normal_cone", std::move(cone)}}},
          {"h", out.h},
          {"method", out.method}};
}

namespace {

void writeRow(std::string& out, double t, const Vec& v) {
  out += format(t);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += ',';
    out += format(v[i]);
  }
  out += '\n';
}

std::string csvHeader(int dim) {
  std::string head = "t";
  for (int i = 0; i < dim; ++i) head += ",y" + std::to_string(i);
  head += '\n';
  return head;
}

}  // namespace

std::string toCsv(const BVPath& p) {
  std::string out = csvHeader(p.dim());
  for (const auto& n : p.nodes()) {
    if ((n.right - n.left).norm() > 0.0) writeRow(out, n.t, n.left);
    writeRow(out, n.t, n.right);
  }
  return out;
}

std::string toCsv(const BVPath& p, const std::vector<double>& grid) {
  // Jump times always get their double row, whether or not the caller's
  // grid contains them.
  std::vector<double> times = grid;
  const std::vector<double> jumps = p.jumpTimes();
  times.insert(times.end(), jumps.begin(), jumps.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::string out = csvHeader(p.dim());
  std::size_t j = 0;
  for (double t : times) {
    while (j < jumps.size() && jumps[j] < t) ++j;
    if (j < jumps.size() && jumps[j] == t) writeRow(out, t, p.leftLimit(t));
    writeRow(out, t, p.at(t));
  }
  return out;
}

BVPath bvPathFromCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: empty input");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* ptr = line.data();
    const char* end = line.data() + line.size();
    while (ptr < end) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(ptr, end, v);
      if (ec != std::errc{}) throw ConfigError("csv: malformed number in '" + line + "'");
      row.push_back(v);
      ptr = next;
      if (ptr < end && *ptr == ',') ++ptr;
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw ConfigError("csv: need at least two rows");
  const std::size_t width = rows.front().size();
  if (width < 2) throw ConfigError("csv: need a time column and one value column");
  std::vector<BVPath::Node> nodes;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) throw ConfigError("csv: ragged rows");
    Vec v(static_cast<Eigen::Index>(width - 1));
    for (std::size_t c = 1; c < width; ++c) v[static_cast<Eigen::Index>(c - 1)] = rows[i][c];
    const double t = rows[i][0];
    if (!nodes.empty() && nodes.back().t == t) {
      nodes.back().right = std::move(v);  // second row of a jump pair
    } else {
      nodes.push_back({t, v, std::move(v)});
    }
  }
  const double horizon = nodes.back().t;
  return BVPath(horizon, std::move(nodes));
}

Json toJson(const std::vector<CheckResult>& checks) {
  Json out = Json::array();
  for (const auto& c : checks)
    out.push_back({{"check", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass},
                   {"h", c.h}});
  return out;
}

std::string describeSchemas() {
  return R"(File formats
============

ConvexSet (JSON object), discriminated by "kind":
  {"kind": "ball", "center": [..], "radius": r}
  {"kind": "box", "lower": [..], "upper": [..]}
  {"kind": "halfspace", "normal": [..], "offset": o}      # <normal,x> <= offset
  {"kind": "polyhedron", "halfspaces": [{"normal": [..], "offset": o}, ..]}
  {"kind": "translate", "base": <ConvexSet>, "shift": [..]}
      # the set {shift - z : z in base}
  {"kind": "dilation", "base": <ConvexSet>, "radius": r}  # base + ball(0, r)
  {"kind": "dilation_intersection",
   "a": <ConvexSet>, "ra": r, "b": <ConvexSet>, "rb": r}
Dimensions are inferred from the vectors and must be consistent.

BVPath (JSON object):
  {"T": horizon, "nodes": [{"t": time, "left": [..], "right": [..]}, ..]}
Nodes are strictly increasing in t with t=0 and t=T present; the path is
affine between nodes, right-continuous, and jumps where left != right.

Solve request (JSON object):
  {"Z": <ConvexSet>, "z0": [..], "u": <BVPath>,
   "grid": {"h": step} | {"times": [..]},
   "method": "direct" | "reparam"}

Sweep output (JSON object):
  {"trajectory": <BVPath>,
   "residuals": {"times": [..], "constraint": [..], "normal_cone": [..]},
   "h": step, "method": ..}
For method "reparam" the residual times refer to the arc-length clock of
the lifted solve; the trajectory is always in original time.

Verification report (JSON array):
  [{"check": name, "residual": r, "tolerance": tol, "pass": bool, "h": step}, ..]

Trajectory CSV:
  header  t,y0,..,y{d-1}
  one row per node; a jump emits two rows at the same t (left then right
  value).  Numbers use shortest round-trip formatting, so exporting on the
  path's own nodes and re-importing reproduces it exactly.

BV-continuity table CSV:
  header  family,n,bv_dist_in,dus_dist_in,d_inf_out,bv_dist_out,h,flagged
)";
}

}  // namespace sweep
