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
// Acceptance run: one PASS/FAIL line per criterion, exit status = number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "geolgp/config.hpp"
#include "geolgp/geolgp.h"
#include "geolgp/problem.hpp"
#include "geolgp/verify.hpp"
#include "instances.hpp"

using namespace geolgp;
namespace fs = std::filesystem;
using Kind = DatumPiece::Kind;

namespace {

const std::string kConfigs = std::string(GEOLGP_SOURCE_DIR) + "/configs/";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double mass(const ScalarGrid& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s * g.spec.h * g.spec.h;
}

Problem from_config(const std::string& name, Config* out = nullptr) {
  const Config c = load_config(kConfigs + name);
  if (out) *out = c;
  return make_problem(c);
}

std::vector<double> ladder_hs() { return {1.0 / 64, 1.0 / 128, 1.0 / 256}; }

std::string ladder_text(const Ladder& l) {
  std::string s = "p=" + fmt("%g", l.p) + " [";
  for (std::size_t k = 0; k < l.values.size(); ++k) s += (k ? " " : "") + fmt("%.4g", l.values[k]);
  return s + "] ratio " + fmt("%.4f", l.last_over_first);
}

// Smooth-datum instance for the ladders: bump weight on the uniformly
// convex ellipse with g = sin(theta).
Problem smooth_ellipse() {
  const auto el = DomainBoundary::ellipse(1.0, 0.6);
  Problem p(el, ConformalWeight::radial_bump(1.0, 0.5, {0.1, 0.05}, 0.3),
            BoundaryDatum({{0, kTwoPi, Kind::kSinusoid, {0, 1, 1, 0}}}, el));
  p.n_source = 32;
  p.n_target = 32;
  return p;
}

Outcome criterion1() {
  Config c;
  Problem p = from_config("disk_jump.json", &c);
  const Metric m = make_metric(p);
  SolveOptions o;
  o.grid = make_grid(c, p.domain);
  const auto t0 = std::chrono::steady_clock::now();
  const Solution s = solve(p, m, o);
  const double secs = seconds_since(t0);
  const double h = s.grid.h;
  double err = 0.0;
  for (int k = 0; k < s.grid.size(); ++k) {
    if (!s.u_flow->mask[k]) continue;
    const double exact = s.grid.center(k).y >= 0 ? 1.0 : 0.0;
    err += std::abs(s.u_flow->u.values[k] - exact) * h * h;
  }
  const double sm = mass(s.density.sigma);
  Outcome r;
  // 256 cells across the disk, plus padding.
  r.pass = std::abs(h - 2.0 / 256) <= 1e-12 && err <= 4 * h * kPi && std::abs(sm - 2.0) <= 1e-3 && secs <= 10.0;
  r.detail = "grid " + std::to_string(s.grid.nx) + "x" + std::to_string(s.grid.ny) + ", h 1/" +
             fmt("%g", 1.0 / h) + ", L1 " +
             fmt("%.4g", err) + " (tol " + fmt("%.4g", 4 * h * kPi) + "), sigma mass " +
             fmt("%.6f", sm) + ", " + fmt("%.2f", secs) + " s";
  return r;
}

struct RandomInstance {
  std::string family;
  DomainBoundary domain;
  ConformalWeight weight;
};

std::vector<RandomInstance> families() {
  const auto el = DomainBoundary::ellipse(1.2, 0.8);
  return {{"constant", el, ConformalWeight::constant(1.0)},
          {"radial_bump", el, ConformalWeight::radial_bump(1.5, -0.6, {0.2, -0.1}, 0.5)},
          {"bilinear_grid", el, instances::wavy_grid(el.bbox())}};
}

// Criteria 2 and 3 share the instances.
void criteria2and3(Outcome& c2, Outcome& c3) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fams = families();
  double worst_dual = 0.0, worst_nc = 0.0;
  int crossings = 0, max_atoms = 0, rays = 0;
  for (int i = 0; i < 20; ++i) {
    const RandomInstance& f = fams[i % 3];
    const Metric m(f.weight, f.domain);
    const int total = 20 + (i * 37) % 81;
    const int ns = total / 2 - (i % 5), nt = total - ns;
    max_atoms = std::max(max_atoms, ns + nt);
    const auto inst = instances::random_atoms(f.domain, ns, nt, 1000 + i);
    const auto cost = cost_matrix(m, inst.sources, inst.targets);
    const auto a = inst.source_mass(), b = inst.target_mass();
    const auto lp = solve_lp(a, b, cost);
    double dual = 0.0;
    for (int s = 0; s < ns; ++s) dual += lp.psi_source[s] * a[s];
    for (int t = 0; t < nt; ++t) dual -= lp.psi_target[t] * b[t];
    worst_dual = std::max(worst_dual, (lp.total_cost - dual) / lp.total_cost);
    const auto nc = solve_noncrossing(inst.sources, inst.targets, cost);
    worst_nc = std::max(worst_nc, std::abs(nc.total_cost - lp.total_cost) / lp.total_cost);
    // Crossings at grid resolution: h of a 256-cell grid across the domain.
    const RaySet rs = build_rays(m, nc, inst.sources, inst.targets, nullptr, 0.0);
    rays += static_cast<int>(rs.rays.size());
    crossings += count_interior_crossings(rs, grid_for_domain(f.domain, 256).h).crossings;
  }
  const double secs = seconds_since(t0);
  c2.pass = worst_dual <= 1e-6 && worst_nc <= 1e-9 && max_atoms <= 100 && secs <= 60.0;
  c2.detail = "20 instances, 3 families, <= " + std::to_string(max_atoms) +
              " atoms, max (LP - dual)/LP " + fmt("%.3g", worst_dual) +
              ", max |noncrossing - LP|/LP " + fmt("%.3g", worst_nc) + ", " +
              fmt("%.2f", secs) + " s";
  c3.pass = crossings == 0;
  c3.detail = std::to_string(crossings) + " interior crossings over " + std::to_string(rays) +
              " rays";
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> th, ts;
  for (int i = 1; i < 24; ++i) th.push_back(kTwoPi * i / 24);
  for (int q = 0; q <= 19; ++q) ts.push_back(0.05 * q);
  const auto disk = DomainBoundary::circle(1);
  const Metric flat(ConformalWeight::constant(1), disk);
  const auto e = check_jacobian_bound(jacobian_fan(flat, th, 0.0, ts));
  const Metric bump(ConformalWeight::radial_bump(1, 4, {0, 0}, 0.3), disk);
  const auto b = check_jacobian_bound(jacobian_fan(bump, th, 0.0, ts));
  const double secs = seconds_since(t0);
  Outcome r;
  r.pass = e.c_estimate >= 0.9 && e.c_estimate <= 1.1 && std::isfinite(b.c_estimate) &&
           b.nonpositive == 0 && b.min_jacobian > 0.0 && secs <= 30.0;
  r.detail = "Euclidean C " + fmt("%.4f", e.c_estimate) + ", bump C " +
             fmt("%.4f", b.c_estimate) + " min J " + fmt("%.3g", b.min_jacobian) + " (" +
             std::to_string(b.nonpositive) + " nonpositive), " + fmt("%.2f", secs) + " s";
  return r;
}

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem p = smooth_ellipse();
  const Metric m = make_metric(p);
  const auto ladders = lp_ladder(p, m, ladder_hs(), {1.0, 2.0});
  Problem two(p.domain, p.weight,
              BoundaryDatum({{0, kPi, Kind::kConstant, {1}}, {kPi, kTwoPi, Kind::kConstant, {0}}},
                            p.domain));
  two.n_source = 1;
  two.n_target = 1;
  const Ladder control = lp_ladder(two, m, ladder_hs(), {2.0}).front();
  const double secs = seconds_since(t0);
  Outcome r;
  r.pass = ladders[0].bounded && ladders[1].bounded && control.increasing && !control.bounded &&
           secs <= 300.0;
  r.detail = ladder_text(ladders[0]) + "; " + ladder_text(ladders[1]) + "; two-atom " +
             ladder_text(control) + (control.increasing ? " increasing" : " not increasing") +
             ", " + fmt("%.1f", secs) + " s";
  return r;
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem smooth = smooth_ellipse();
  // g rises on [0, pi/2], falls on [pi, 3pi/2]: f+ and f- have disjoint supports.
  Problem disjoint(smooth.domain, smooth.weight,
                   BoundaryDatum({{0, kPi / 2, Kind::kPower, {0, 1, 0, 1}},
                                  {kPi / 2, kPi, Kind::kConstant, {kPi / 2}},
                                  {kPi, 3 * kPi / 2, Kind::kPower, {kPi / 2, -1, kPi, 1}},
                                  {3 * kPi / 2, kTwoPi, Kind::kConstant, {0}}},
                                 smooth.domain));
  disjoint.n_source = 32;
  disjoint.n_target = 32;
  const Metric m = make_metric(disjoint);
  const Ladder d8 = lp_ladder(disjoint, m, ladder_hs(), {8.0}).front();
  const Problem holder = from_config("ellipse_ladders.json");
  const HolderReport hr = check_holder_case(holder, make_metric(holder), 0.5, ladder_hs());
  const double secs = seconds_since(t0);
  Outcome r;
  r.pass = d8.bounded && hr.bounded && hr.p == 4.0 && secs <= 300.0;
  r.detail = "disjoint " + ladder_text(d8) + "; alpha 1/2 " + ladder_text(hr.ladder) + ", " +
             fmt("%.1f", secs) + " s";
  return r;
}

Outcome criterion7() {
  Config c;
  const Problem p = from_config("bump_sine.json", &c);
  SolveOptions o;
  o.grid = make_grid(c, p.domain);
  const Solution s = solve(p, make_metric(p), o);
  const double h = s.grid.h;
  const LevelSetReport l = check_level_sets(*s.u_flow, s.rays, p.domain, 5, 2 * h);
  double area = 0.0;
  for (char k : s.u_flow->mask) area += k;
  area *= h * h;
  const double osc = p.datum.max_value() - p.datum.min_value();
  const double l1 = l1_difference(*s.u_flow, *s.u_rays);
  const double tol = 5 * h * osc * area;
  Outcome r;
  r.pass = l.levels.size() == 5 && l.max_hausdorff <= 2 * h && l1 <= tol;
  r.detail = std::to_string(l.levels.size()) + " levels, max Hausdorff " +
             fmt("%.3f", l.max_hausdorff / h) + " cells; method L1 " + fmt("%.4g", l1) +
             " (tol " + fmt("%.4g", tol) + ")";
  return r;
}

Outcome criterion8() {
  Config c;
  const Problem p = from_config("stability.json", &c);
  const auto t = check_stability(p, make_metric(p), make_grid(c, p.domain), {16, 32, 64, 128});
  Outcome r;
  r.pass = t.monotone && t.rows.size() == 4;
  r.detail = "cost diffs";
  for (std::size_t k = 1; k < t.rows.size(); ++k) r.detail += " " + fmt("%.3g", t.rows[k].cost_diff);
  r.detail += "; sigma L1 diffs";
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    r.detail += " " + fmt("%.3g", t.rows[k].sigma_l1_diff);
  }
  return r;
}

Outcome criterion9() {
  const Problem base = smooth_ellipse();
  Problem tripled = base;
  tripled.weight = base.weight.scaled(3.0);
  SolveOptions o;
  o.grid = grid_for_domain(base.domain, 128);
  const Solution a = solve(base, make_metric(base), o);
  const Solution b = solve(tripled, make_metric(tripled), o);
  bool pairs = a.plan.flows.size() == b.plan.flows.size();
  for (std::size_t k = 0; pairs && k < a.plan.flows.size(); ++k) {
    pairs = a.plan.flows[k].source == b.plan.flows[k].source &&
            a.plan.flows[k].target == b.plan.flows[k].target;
  }
  double du = 0.0;
  for (const auto& [ua, ub] : {std::pair{&*a.u_flow, &*b.u_flow}, std::pair{&*a.u_rays, &*b.u_rays}}) {
    for (int k = 0; k < a.grid.size(); ++k) {
      if (ua->mask[k]) du = std::max(du, std::abs(ua->u.values[k] - ub->u.values[k]));
    }
  }
  const double cost_err = std::abs(b.plan.total_cost / (3 * a.plan.total_cost) - 1.0);
  const double sa = mass(a.density.sigma), sb = mass(b.density.sigma);
  const double sigma_err = std::abs(sb / (3 * sa) - 1.0);
  Outcome r;
  r.pass = pairs && du <= 1e-9 && cost_err <= 1e-9 && sigma_err <= 1e-9;
  r.detail = std::string(pairs ? "same" : "different") + " index pairs, max |du| " +
             fmt("%.3g", du) + ", cost ratio err " + fmt("%.3g", cost_err) +
             ", sigma L1 ratio err " + fmt("%.3g", sigma_err);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome criterion10() {
  Outcome r;
  const fs::path root = fs::current_path() / "acceptance_determinism";
  fs::remove_all(root);
  for (const char* run : {"a", "b"}) {
    geolgp_config* c = nullptr;
    int passed = 0;
    if (geolgp_config_load((kConfigs + "disk_jump.json").c_str(), &c) != GEOLGP_OK ||
        geolgp_config_set_out_dir(c, (root / run).string().c_str()) != GEOLGP_OK ||
        geolgp_run(c, &passed) != GEOLGP_OK) {
      r.detail = std::string("run failed: ") + geolgp_last_error();
      geolgp_config_free(c);
      return r;
    }
    geolgp_config_free(c);
  }
  int files = 0, differing = 0;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    ++files;
    const fs::path other = root / "b" / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differing;
  }
  r.pass = files >= 10 && differing == 0;
  r.detail = std::to_string(files) + " artifacts, " + std::to_string(differing) + " differ";
  return r;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("error: ") + e.what()};
  }
}

}  // namespace

int main() {
  std::vector<Outcome> results(10);
  results[0] = guarded(criterion1);
  try {
    criteria2and3(results[1], results[2]);
  } catch (const std::exception& e) {
    results[1] = results[2] = {false, std::string("error: ") + e.what()};
  }
  results[3] = guarded(criterion4);
  results[4] = guarded(criterion5);
  results[5] = guarded(criterion6);
  results[6] = guarded(criterion7);
  results[7] = guarded(criterion8);
  results[8] = guarded(criterion9);
  results[9] = guarded(criterion10);
  int failed = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    std::printf("criterion %2zu: %s  %s\n", k + 1, results[k].pass ? "PASS" : "FAIL",
                results[k].detail.c_str());
    failed += !results[k].pass;
  }
  std::fflush(stdout);
  return failed;
}
