#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "sweep/corpus.hpp"
#include "sweep/experiment.hpp"
#include "sweep/json_io.hpp"
#include "sweep/solver.hpp"
#include "sweep/verify.hpp"

namespace fs = std::filesystem;
using namespace sweep;

namespace {

Json readJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void writeFile(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

SweepOutput solveRequest(const SolveRequest& req) {
  const Grid grid = req.makeGrid();
  if (req.method == "reparam") return playViaReparam(req.z0, req.u, req.z, grid);
  return play(req.z0, req.u, req.z, grid);
}

std::vector<CheckResult> verifyOutput(const SolveRequest& req,
                                      const SweepOutput& out,
                                      std::uint64_t seed) {
  std::vector<CheckResult> checks;
  const double h = out.h;
  const BVPath& y = out.trajectory;
  const SetPath c = SetPath::translatePath(req.u, req.z);

  const int coneFailures = checkNormalCone(c, y);
  checks.push_back({"normal_cone_failures", static_cast<double>(coneFailures),
                    0.0, coneFailures == 0, h});

  const auto zTests = standardViTestFunctions(req.u, y, req.z, seed);
  const double vi = checkIntegralVi(req.u, y, req.z, zTests);
  checks.push_back({"integral_vi_residual", vi, 10.0 * h, vi <= 10.0 * h, h});

  // Exact for the direct jump update; the reparametrized pipeline resolves
  // jumps through the geodesic gap, so its residual is a convergence
  // diagnostic at O(h).
  const double jumpTol = out.method == "direct" ? kProjTol : 10.0 * h;
  double jumpLaw = 0.0;
  for (double t : req.u.jumpTimes()) {
    const Vec expected = project(c.at(t), y.leftLimit(t));
    jumpLaw = std::max(jumpLaw, (y.at(t) - expected).norm());
  }
  checks.push_back({"jump_law", jumpLaw, jumpTol, jumpLaw <= jumpTol, h});

  const double constraint = out.maxConstraintDist();
  checks.push_back({"constraint_distance", constraint, kCheckTol,
                    constraint <= kCheckTol, h});
  return checks;
}

int cmdSolve(const std::string& configPath, const std::string& outDir,
             double hOverride, const std::string& methodOverride,
             std::uint64_t seed) {
  SolveRequest req = solveRequestFromJson(readJsonFile(configPath));
  if (hOverride > 0.0) {
    req.h = hOverride;
    req.times.reset();
  }
  if (!methodOverride.empty()) req.method = methodOverride;

  const SweepOutput out = solveRequest(req);
  const auto checks = verifyOutput(req, out, seed);

  const fs::path dir(outDir);
  writeFile(dir / "trajectory.csv", toCsv(out.trajectory));
  writeFile(dir / "output.json", toJson(out).dump(2) + "\n");
  writeFile(dir / "report.json", toJson(checks).dump(2) + "\n");

  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
              << " residual=" << c.residual << " tol=" << c.tolerance << "\n";
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}

int cmdBvContinuity(const std::string& configPath, const std::string& outDir,
                    double hOverride, std::uint64_t seed) {
  BvContinuityConfig config = defaultBvContinuityConfig();
  if (!configPath.empty()) {
    const Json j = readJsonFile(configPath);
    if (j.contains("u")) config.u = bvPathFromJson(j["u"], "u");
    if (j.contains("Z")) config.z = convexSetFromJson(j["Z"], "Z");
    if (j.contains("z0")) config.z0 = vecFromJson(j["z0"], "z0");
    if (j.contains("h")) config.h = j["h"].get<double>();
    if (j.contains("ns")) config.ns = j["ns"].get<std::vector<int>>();
    if (j.contains("families")) {
      config.families.clear();
      for (const auto& name : j["families"]) {
        bool found = false;
        for (Family f : allFamilies())
          if (familyName(f) == name.get<std::string>()) {
            config.families.push_back(f);
            found = true;
          }
        if (!found)
          throw ConfigError("families: unknown family '" +
                            name.get<std::string>() + "'");
      }
    }
  }
  if (hOverride > 0.0) config.h = hOverride;
  config.seed = seed;

  const auto reports = runBvContinuity(config);

  std::string csv = "family,n,bv_dist_in,dus_dist_in,d_inf_out,bv_dist_out,h,flagged\n";
  Json jreport = Json::array();
  for (const auto& r : reports) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      std::ostringstream line;
      line << familyName(r.family) << ',' << row.n << ',' << row.bvDistIn << ','
           << row.dusDistIn << ',' << row.dInfOut << ',' << row.bvDistOut << ','
           << row.h << ',' << (r.bvConvergent ? 0 : 1) << '\n';
      csv += line.str();
      rows.push_back({{"n", row.n},
                      {"bv_dist_in", row.bvDistIn},
                      {"dus_dist_in", row.dusDistIn},
                      {"d_inf_out", row.dInfOut},
                      {"bv_dist_out", row.bvDistOut},
                      {"h", row.h}});
    }
    jreport.push_back({{"family", familyName(r.family)},
                       {"bv_convergent", r.bvConvergent},
                       {"flagged", !r.bvConvergent},
                       {"fitted_C", r.fittedC},
                       {"rows", std::move(rows)}});
    std::cout << familyName(r.family) << ": fitted C = " << r.fittedC
              << (r.bvConvergent ? "" : "  [flagged: d_us-only family]") << "\n";
  }
  const fs::path dir(outDir);
  writeFile(dir / "bv_continuity.csv", csv);
  writeFile(dir / "bv_continuity.json", jreport.dump(2) + "\n");
  return 0;
}

struct CorpusEntry {
  std::string name;
  SolveRequest request;
  bool negativeControl = false;
};

struct ItemOutcome {
  std::string name;
  bool hard_failure = false;
  std::vector<CheckResult> checks;
  std::string error;
};

BVPath corruptTrajectory(const BVPath& y) {
  std::vector<BVPath::Node> nodes = y.nodes();
  const double eps = 0.05 * std::max(1.0, y.supNorm());
  for (std::size_t i = 1; i + 1 < nodes.size(); i += 2) {
    nodes[i].left[0] += eps;
    nodes[i].right[0] += eps;
  }
  return BVPath(y.horizon(), std::move(nodes));
}

ItemOutcome runCorpusItem(const CorpusEntry& entry, std::uint64_t seed) {
  ItemOutcome outcome;
  outcome.name = entry.name;
  try {
    const SweepOutput out = solveRequest(entry.request);
    if (entry.negativeControl) {
      // Deliberately corrupted trajectory: the checks must detect it.
      const BVPath bad = corruptTrajectory(out.trajectory);
      const SetPath c = SetPath::translatePath(entry.request.u, entry.request.z);
      const int failures = checkNormalCone(c, bad);
      outcome.checks.push_back({"negative_control_detected",
                                static_cast<double>(failures), 1.0,
                                failures >= 1, out.h});
      outcome.hard_failure = failures < 1;
      return outcome;
    }
    outcome.checks = verifyOutput(entry.request, out, seed);
    for (const auto& c : outcome.checks)
      if (!c.pass) outcome.hard_failure = true;
  } catch (const std::exception& e) {
    outcome.error = e.what();
    outcome.hard_failure = true;
  }
  return outcome;
}

int cmdCorpus(const std::string& configPath, bool builtin,
              const std::string& outDir, double hOverride, std::uint64_t seed) {
  const double h = hOverride > 0.0 ? hOverride : 1e-2;
  std::vector<CorpusEntry> entries;
  std::vector<std::string> lipschitzNames;

  if (builtin) {
    for (const auto& item : builtinCorpus()) {
      SolveRequest req{item.z, item.z0, item.u, h, std::nullopt, "direct"};
      entries.push_back({item.name, std::move(req), false});
      if (item.lipschitz) lipschitzNames.push_back(item.name);
    }
    // One negative control per input class.
    SolveRequest bad1{entries[0].request};
    entries.push_back({"negative_control_ramp", std::move(bad1), true});
    SolveRequest bad2{entries[4].request};
    entries.push_back({"negative_control_circle", std::move(bad2), true});
  } else {
    const Json manifest = readJsonFile(configPath);
    if (!manifest.contains("items") || !manifest["items"].is_array())
      throw ConfigError("corpus config: missing 'items' array");
    const fs::path baseDir = fs::path(configPath).parent_path();
    for (const auto& item : manifest["items"]) {
      const std::string name =
          item.value("name", "item" + std::to_string(entries.size()));
      Json req;
      if (item.contains("request"))
        req = item["request"];
      else if (item.contains("path"))
        req = readJsonFile(baseDir / item["path"].get<std::string>());
      else
        throw ConfigError("corpus item '" + name + "': needs 'request' or 'path'");
      CorpusEntry entry{name, solveRequestFromJson(req),
                        item.value("negative_control", false)};
      if (hOverride > 0.0) {
        entry.request.h = hOverride;
        entry.request.times.reset();
      }
      if (item.value("lipschitz", false)) lipschitzNames.push_back(entry.name);
      entries.push_back(std::move(entry));
    }
  }

  // Items are independent; run them in parallel and report in input order.
  std::vector<std::future<ItemOutcome>> futures;
  futures.reserve(entries.size());
  for (const auto& entry : entries)
    futures.push_back(std::async(std::launch::async, runCorpusItem,
                                 std::cref(entry), seed));

  bool anyHard = false;
  Json jitems = Json::array();
  for (auto& f : futures) {
    const ItemOutcome outcome = f.get();
    anyHard = anyHard || outcome.hard_failure;
    Json jchecks = toJson(outcome.checks);
    jitems.push_back({{"name", outcome.name},
                      {"hard_failure", outcome.hard_failure},
                      {"error", outcome.error},
                      {"checks", std::move(jchecks)}});
    std::cout << (outcome.hard_failure ? "[FAIL] " : "[PASS] ") << outcome.name;
    if (!outcome.error.empty()) std::cout << "  error: " << outcome.error;
    std::cout << "\n";
  }

  // Grid-halving study on the Lipschitz items: time-averaged error against
  // a reference solution at h/64.  The halving-ratio band applies only when
  // the coarse error is in the measurable first-order regime; items whose
  // play is piecewise-exact sit far below it and are reported as such.
  auto meanErr = [](const BVPath& a, const BVPath& b) {
    const int cells = 4000;
    double sum = 0.0;
    for (int i = 0; i <= cells; ++i) {
      const double t = a.horizon() * i / cells;
      sum += (a.at(t) - b.at(t)).norm();
    }
    return sum / (cells + 1);
  };
  Json jrich = Json::array();
  for (const auto& entry : entries) {
    if (entry.negativeControl) continue;
    if (std::find(lipschitzNames.begin(), lipschitzNames.end(), entry.name) ==
        lipschitzNames.end())
      continue;
    SolveRequest r1 = entry.request;
    SolveRequest r2 = entry.request;
    SolveRequest rref = entry.request;
    const double hh = r1.h.value_or(h);
    r2.h = hh / 2.0;
    rref.h = hh / 64.0;
    const BVPath yref = solveRequest(rref).trajectory;
    const double e1 = meanErr(solveRequest(r1).trajectory, yref);
    const double e2 = meanErr(solveRequest(r2).trajectory, yref);
    const bool measurable = e1 > 5e-2 * hh;
    const double ratio = e2 > 0.0 ? e1 / e2 : 2.0;
    const bool pass =
        e2 <= e1 + 1e-15 && (!measurable || (ratio >= 1.4 && ratio <= 2.6));
    anyHard = anyHard || !pass;
    jrich.push_back({{"name", entry.name},
                     {"err_h", e1},
                     {"err_h2", e2},
                     {"ratio", ratio},
                     {"first_order_regime", measurable},
                     {"pass", pass}});
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << entry.name
              << (measurable
                      ? "  richardson ratio=" + std::to_string(ratio)
                      : "  superconvergent (error below the first-order regime)")
              << "\n";
  }

  const Json report = {{"h", h}, {"items", jitems}, {"richardson", jrich}};
  writeFile(fs::path(outDir) / "corpus_report.json", report.dump(2) + "\n");
  return anyHard ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweeping-process and play-operator experiment runner"};
  app.set_help_flag("--help", "print help");  // frees -h/--h for the step size
  app.require_subcommand(1);

  std::string configPath;
  std::string outDir = "out";
  double hOverride = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  bool builtin = false;

  auto* solve = app.add_subcommand("solve", "solve one request and verify it");
  solve->set_help_flag("--help", "print help");
  solve->add_option("--config", configPath, "solve request JSON")->required();
  solve->add_option("--out", outDir, "output directory");
  solve->add_option("--h", hOverride, "grid step override");
  solve->add_option("--seed", seed, "RNG seed");
  solve->add_option("--method", method, "direct|reparam|both")
      ->check(CLI::IsMember({"direct", "reparam", "both"}));

  auto* bv = app.add_subcommand("bv-continuity",
                                "input-output BV-norm continuity experiment");
  bv->set_help_flag("--help", "print help");
  bv->add_option("--config", configPath, "experiment config JSON");
  bv->add_option("--out", outDir, "output directory");
  bv->add_option("--h", hOverride, "grid step override");
  bv->add_option("--seed", seed, "RNG seed");

  auto* corpus = app.add_subcommand("corpus", "run the verification corpus");
  corpus->set_help_flag("--help", "print help");
  corpus->add_option("--config", configPath, "corpus manifest JSON");
  corpus->add_flag("--builtin", builtin, "use the built-in regression corpus");
  corpus->add_option("--out", outDir, "output directory");
  corpus->add_option("--h", hOverride, "grid step override");
  corpus->add_option("--seed", seed, "RNG seed");

  auto* describe =
      app.add_subcommand("describe-schemas", "print the file formats");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (method == "both") {
        int rc = cmdSolve(configPath, outDir + "/direct", hOverride, "direct", seed);
        rc |= cmdSolve(configPath, outDir + "/reparam", hOverride, "reparam", seed);
        return rc;
      }
      return cmdSolve(configPath, outDir, hOverride, method, seed);
    }
    if (bv->parsed()) return cmdBvContinuity(configPath, outDir, hOverride, seed);
    if (corpus->parsed()) {
      if (!builtin && configPath.empty())
        throw ConfigError("corpus: pass --config MANIFEST or --builtin");
      return cmdCorpus(configPath, builtin, outDir, hOverride, seed);
    }
    if (describe->parsed()) {
      std::cout << describeSchemas();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
