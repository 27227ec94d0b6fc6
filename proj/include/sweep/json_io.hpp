#ifndef SWEEP_JSON_IO_HPP
#define SWEEP_JSON_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sweep/bv_path.hpp"
#include "sweep/convex_set.hpp"
#include "sweep/solver.hpp"

namespace sweep {

using Json = nlohmann::json;

Json toJson(const Vec& v);
Vec vecFromJson(const Json& j, const std::string& path);

Json toJson(const ConvexSet& k);
ConvexSet convexSetFromJson(const Json& j, const std::string& path = "Z");

Json toJson(const BVPath& p);
BVPath bvPathFromJson(const Json& j, const std::string& path = "u");

Json toJson(const NondecreasingMap& m);

struct SolveRequest {
  ConvexSet z;
  Vec z0;
  BVPath u;
  std::optional<double> h;
  std::optional<std::vector<double>> times;
  std::string method;  // "direct" | "reparam"

  Grid makeGrid() const;
};

SolveRequest solveRequestFromJson(const Json& j);
Json toJson(const SolveRequest& r);

Json toJson(const SweepOutput& out);

/// Trajectory rows (t, y_1..y_d) at the path's own nodes, with a double row
/// at each jump; shortest round-trip number formatting.
std::string toCsv(const BVPath& p);
/// Rows at caller-chosen times plus double rows at jumps.
std::string toCsv(const BVPath& p, const std::vector<double>& grid);
BVPath bvPathFromCsv(std::istream& in);

/// One verification line of a report.
struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
  double h;
};
Json toJson(const std::vector<CheckResult>& checks);

std::string describeSchemas();

}  // namespace sweep

#endif
