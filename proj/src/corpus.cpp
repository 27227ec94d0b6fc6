#include "sweep/corpus.hpp"

#include <cmath>
#include <numbers>

namespace sweep {

namespace {

BVPath scalarRamp() { return BVPath::linear(2.0, vec1(0.0), vec1(2.0)); }

BVPath scalarZigzag() {
  return BVPath::piecewiseLinear({0.0, 0.8, 1.6, 2.4, 3.0},
                                 {vec1(0.0), vec1(1.5), vec1(-0.5), vec1(1.0),
                                  vec1(0.6)});
}

BVPath scalarJump() {
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec1(0.0), vec1(0.0)});
  nodes.push_back({0.5, vec1(0.0), vec1(3.0)});
  nodes.push_back({1.0, vec1(3.0), vec1(3.0)});
  return BVPath(1.0, std::move(nodes));
}

BVPath scalarIdleJump() {
  // Ramp, idle plateau, upward jump, then a descent.
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec1(0.0), vec1(0.0)});
  nodes.push_back({0.75, vec1(1.0), vec1(1.0)});
  nodes.push_back({1.25, vec1(1.0), vec1(1.0)});
  nodes.push_back({1.5, vec1(1.0), vec1(2.5)});
  nodes.push_back({2.0, vec1(1.8), vec1(1.8)});
  return BVPath(2.0, std::move(nodes));
}

BVPath circle2d(double radius, int segments) {
  std::vector<double> times;
  std::vector<Vec> values;
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    const double a = 2.0 * std::numbers::pi * t;
    times.push_back(t);
    values.push_back(vec({radius * std::cos(a), radius * std::sin(a)}));
  }
  return BVPath::piecewiseLinear(std::move(times), std::move(values));
}

BVPath diamond2d() {
  return BVPath::piecewiseLinear(
      {0.0, 0.5, 1.0, 1.5, 2.0},
      {vec({1.8, 0.0}), vec({0.0, 1.8}), vec({-1.8, 0.0}), vec({0.0, -1.8}),
       vec({1.8, 0.0})});
}

BVPath jumps2d() {
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec({0.0, 0.0}), vec({0.0, 0.0})});
  nodes.push_back({0.3, vec({0.9, 0.3}), vec({0.9, 0.3})});
  nodes.push_back({0.5, vec({1.2, 0.4}), vec({-0.6, 1.4})});
  nodes.push_back({0.8, vec({-0.2, 0.6}), vec({1.0, -1.0})});
  nodes.push_back({1.0, vec({0.6, -0.6}), vec({0.6, -0.6})});
  return BVPath(1.0, std::move(nodes));
}

BVPath loopPoly2d() {
  return BVPath::piecewiseLinear(
      {0.0, 0.25, 0.5, 0.75, 1.0},
      {vec({0.0, 0.0}), vec({1.6, 0.4}), vec({0.8, 1.8}), vec({-1.4, 0.6}),
       vec({0.0, -1.2})});
}

BVPath helix3d() {
  std::vector<double> times;
  std::vector<Vec> values;
  const int segments = 32;
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    const double a = 3.0 * std::numbers::pi * t;
    values.push_back(
        vec({1.6 * std::cos(a), 1.6 * std::sin(a), 1.2 * t}));
    times.push_back(t);
  }
  return BVPath::piecewiseLinear(std::move(times), std::move(values));
}

BVPath jump3d() {
  std::vector<BVPath::Node> nodes;
  nodes.push_back({0.0, vec({0.0, 0.0, 0.0}), vec({0.0, 0.0, 0.0})});
  nodes.push_back({0.4, vec({0.8, -0.4, 0.6}), vec({-0.9, 1.1, -0.5})});
  nodes.push_back({1.0, vec({0.2, 0.5, 0.4}), vec({0.2, 0.5, 0.4})});
  return BVPath(1.0, std::move(nodes));
}

ConvexSet triangle2d() {
  std::vector<HalfSpace> faces;
  faces.push_back({vec({0.0, -1.0}), 0.6});
  faces.push_back({vec({1.0, 1.0}), 1.0});
  faces.push_back({vec({-1.0, 1.0}), 1.0});
  return ConvexSet::polyhedron(std::move(faces));
}

}  // namespace

std::vector<CorpusItem> builtinCorpus() {
  std::vector<CorpusItem> items;
  items.push_back({"ramp_1d", ConvexSet::interval(-1.0, 1.0), vec1(0.0),
                   scalarRamp(), true});
  items.push_back({"zigzag_1d", ConvexSet::interval(-1.0, 1.0), vec1(0.5),
                   scalarZigzag(), true});
  items.push_back({"jump_1d", ConvexSet::interval(-1.0, 1.0), vec1(0.0),
                   scalarJump(), false});
  items.push_back({"idle_jump_1d", ConvexSet::interval(-1.0, 1.0), vec1(0.25),
                   scalarIdleJump(), false});
  items.push_back({"circle_2d", ConvexSet::ball(vec({0.0, 0.0}), 1.0),
                   vec({0.0, 0.0}), circle2d(2.2, 48), true});
  items.push_back({"diamond_2d", ConvexSet::box(vec({-1.0, -1.0}), vec({1.0, 1.0})),
                   vec({0.25, -0.25}), diamond2d(), true});
  items.push_back({"jumps_2d", ConvexSet::ball(vec({0.0, 0.0}), 0.75),
                   vec({0.0, 0.0}), jumps2d(), false});
  items.push_back({"triangle_2d", triangle2d(), vec({0.0, 0.0}), loopPoly2d(),
                   true});
  items.push_back({"helix_3d", ConvexSet::ball(vec({0.0, 0.0, 0.0}), 1.0),
                   vec({0.0, 0.0, 0.0}), helix3d(), true});
  items.push_back({"jump_3d", ConvexSet::box(vec({-0.8, -0.8, -0.8}), vec({0.8, 0.8, 0.8})),
                   vec({0.0, 0.0, 0.0}), jump3d(), false});
  return items;
}

}  // namespace sweep
