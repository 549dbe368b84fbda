// Copyright 2026 The geolgp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geolgp/run.hpp"

#include <algorithm>
#include <cmath>

#include "geolgp/io.hpp"
#include "json.hpp"

namespace geolgp {
namespace {

using ojson = nlohmann::ordered_json;

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson point_json(Vec2 p) { return ojson::array({num(p.x), num(p.y)}); }

ojson atoms_json(const std::vector<BoundaryPoint>& atoms) {
  ojson a = ojson::array();
  for (const auto& b : atoms) {
    a.push_back({{"theta", num(b.theta)}, {"x", num(b.position.x)}, {"y", num(b.position.y)},
                 {"mass", num(b.mass)}});
  }
  return a;
}

ojson plan_json(const Solution& s) {
  ojson flows = ojson::array();
  for (const Flow& f : s.plan.flows) {
    flows.push_back({{"source", f.source}, {"target", f.target}, {"mass", num(f.mass)},
                     {"cost", num(f.cost)}, {"level_lo", num(f.level_lo)},
                     {"level_hi", num(f.level_hi)}});
  }
  ojson psi_s = ojson::array(), psi_t = ojson::array();
  for (double v : s.plan.psi_source) psi_s.push_back(num(v));
  for (double v : s.plan.psi_target) psi_t.push_back(num(v));
  return {{"total_cost", num(s.plan.total_cost)}, {"sources", atoms_json(s.sources)},
          {"targets", atoms_json(s.targets)}, {"flows", flows}, {"psi_source", psi_s},
          {"psi_target", psi_t}, {"warnings", s.plan.warnings}};
}

ojson rays_json(const RaySet& rays) {
  ojson out = ojson::array();
  for (const Ray& r : rays.rays) {
    ojson pts = ojson::array();
    for (Vec2 p : r.geodesic.points) pts.push_back(point_json(p));
    out.push_back({{"source", r.source}, {"target", r.target}, {"mass", num(r.mass)},
                   {"g_lo", num(r.g_lo)}, {"g_hi", num(r.g_hi)},
                   {"weighted_length", num(r.geodesic.weighted_length)},
                   {"ambiguous", r.geodesic.ambiguous}, {"points", pts}});
  }
  return {{"rays", out}};
}

ojson levels_json(const Solution& s, const DomainBoundary& domain) {
  ojson levels = ojson::array();
  const LevelSetReport rep = check_level_sets(*s.u_flow, s.rays, domain, 5, 2 * s.grid.h);
  std::vector<double> ts = rep.levels;
  if (ts.empty()) {
    // No rays carry a level range: use quantiles of u instead.
    std::vector<double> u;
    for (std::size_t c = 0; c < s.u_flow->u.values.size(); ++c) {
      if (s.u_flow->mask[c]) u.push_back(s.u_flow->u.values[c]);
    }
    std::sort(u.begin(), u.end());
    for (int q = 1; q <= 5 && !u.empty(); ++q) ts.push_back(u[q * (u.size() - 1) / 6]);
  }
  for (double t : ts) {
    ojson lines = ojson::array();
    for (const auto& line : contour_lines(*s.u_flow, t)) {
      ojson pts = ojson::array();
      for (Vec2 p : line) pts.push_back(point_json(p));
      lines.push_back(pts);
    }
    levels.push_back({{"t", num(t)}, {"polylines", lines}});
  }
  return {{"levels", levels}};
}

ojson check_json(const CheckResult& c) {
  ojson metrics = ojson::object();
  for (const auto& [k, v] : c.metrics) metrics[k] = num(v);
  return {{"name", c.name}, {"pass", c.pass}, {"inconclusive", c.inconclusive},
          {"metrics", metrics}, {"notes", c.notes}};
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

bool RunResult::checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

RunResult run(const Config& config) {
  RunResult result;
  const std::string dir = config.out_dir;
  make_directories(dir);
  auto path = [&](const char* name) { return dir + "/" + name; };

  ojson report;
  report["config_hash"] = hash_hex(config.hash);
  report["status"] = "ok";

  auto failed = [&](const Error& e, const std::string& stage) {
    result.failed = true;
    result.error_code = e.code();
    result.error = e.what();
    report["status"] = "failed";
    report["error"] = {{"stage", stage}, {"code", error_code_name(e.code())}, {"message", e.what()}};
  };

  std::optional<Problem> problem;
  std::optional<Metric> metric;
  GridSpec grid;
  try {
    problem.emplace(make_problem(config));
    grid = make_grid(config, problem->domain);
    metric.emplace(make_metric(*problem));
  } catch (const Error& e) {
    failed(e, "setup");
    write_text(path("report.json"), dump(report));
    return result;
  }
  report["grid"] = {{"nx", grid.nx}, {"ny", grid.ny}, {"h", num(grid.h)},
                    {"origin", point_json(grid.origin)}};
  report["instance"] = {
      {"domain", config.domain.kind},
      {"weight", config.weight.family},
      {"k_min", num(problem->weight.k_min())},
      {"k_max", num(problem->weight.k_max())},
      {"datum_pieces", config.pieces.size()},
      {"datum_jumps", problem->datum.jumps().size()},
      {"datum_total_variation", num(problem->datum.total_variation())},
      {"solver", config.solver == SolverKind::kLp ? "lp" : "noncrossing"},
      {"seed", config.seed}};

  Solution s;
  SolveOptions opts;
  opts.grid = grid;
  opts.keep_going = true;
  try {
    s = solve(*problem, *metric, opts);
  } catch (const Error& e) {
    failed(e, "transport");
    report["checks"] = ojson::array();
    write_text(path("report.json"), dump(report));
    return result;
  }
  report["instance"]["n_source"] = s.sources.size();
  report["instance"]["n_target"] = s.targets.size();
  report["plan"] = {{"total_cost", num(s.plan.total_cost)},
                    {"flows", s.plan.flows.size()},
                    {"warnings", s.plan.warnings}};
  if (s.convexity) {
    report["instance"]["convexity_passed"] = s.convexity->passed();
  }

  write_text(path("plan.json"), dump(plan_json(s)));
  write_text(path("rays.json"), dump(rays_json(s.rays)));
  write_csv(path("sigma.csv"), s.density.sigma);
  write_pgm(path("sigma.pgm"), s.density.sigma);
  write_csv(path("sigma_plus.csv"), s.density.sigma_plus);
  write_csv(path("sigma_minus.csv"), s.density.sigma_minus);
  if (s.potential) write_csv(path("psi.csv"), s.potential->grid);
  if (s.u_flow) {
    write_csv(path("u.csv"), s.u_flow->u);
    write_pgm(path("u.pgm"), s.u_flow->u);
    write_text(path("levels.json"), dump(levels_json(s, problem->domain)));
  }
  for (const StageFailure& f : s.failures) {
    if (!result.failed) failed(Error(f.code, f.message), f.stage);
  }

  ojson checks = ojson::array();
  for (const CheckConfig& c : config.checks) {
    CheckResult r;
    try {
      r = run_check(c.name, *problem, *metric, s, make_check_options(config, c));
    } catch (const Error& e) {
      r.name = c.name;
      r.pass = false;
      r.notes.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
    }
    checks.push_back(check_json(r));
    result.checks.push_back(std::move(r));
  }
  report["checks"] = checks;
  report["all_passed"] = result.checks_passed();
  write_text(path("report.json"), dump(report));
  return result;
}

}  // namespace geolgp
