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

#include "geolgp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace geolgp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sum_abs_diff(const ScalarGrid& a, const ScalarGrid& b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.values.size(); ++c) acc += std::abs(a.values[c] - b.values[c]);
  return acc * a.spec.h * a.spec.h;
}

double polyline_distance(const std::vector<Vec2>& line, Vec2 z) {
  double best = INFINITY;
  if (line.size() == 1) return distance(line[0], z);
  for (std::size_t s = 0; s + 1 < line.size(); ++s) {
    best = std::min(best, segment_distance(z, line[s], line[s + 1]));
  }
  return best;
}

// Bilinear interpolation on cell centres; non-finite corners are skipped.
double sample(const ScalarGrid& f, Vec2 p) {
  const GridSpec& g = f.spec;
  const double fx = (p.x - g.origin.x) / g.h - 0.5;
  const double fy = (p.y - g.origin.y) / g.h - 0.5;
  const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
  const double tx = fx - i, ty = fy - j;
  double acc = 0.0, wsum = 0.0;
  for (int dj = 0; dj < 2; ++dj) {
    for (int di = 0; di < 2; ++di) {
      if (!g.in_range(i + di, j + dj)) continue;
      const double v = f.at(i + di, j + dj);
      if (!std::isfinite(v)) continue;
      const double w = (di ? tx : 1 - tx) * (dj ? ty : 1 - ty);
      acc += w * v;
      wsum += w;
    }
  }
  return wsum > 0.0 ? acc / wsum : kNaN;
}

std::string p_tag(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

SolveOptions quick(const GridSpec& grid) {
  SolveOptions o;
  o.grid = grid;
  o.certificate = false;
  o.potential = false;
  o.reconstruct = false;
  return o;
}

}  // namespace

void CheckResult::set(const std::string& key, double value) {
  for (auto& kv : metrics) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  metrics.emplace_back(key, value);
}

double CheckResult::get(const std::string& key) const {
  for (const auto& kv : metrics) {
    if (kv.first == key) return kv.second;
  }
  return kNaN;
}

JacobianBound check_jacobian_bound(const GeodesicFan& fan, double t_cap) {
  JacobianBound out;
  double c = 0.0;
  out.t0_ratio_min = INFINITY;
  out.t0_ratio_max = -INFINITY;
  out.min_jacobian = INFINITY;
  bool finite = true;
  for (std::size_t r = 0; r < fan.jacobian.size(); ++r) {
    const double j0 = fan.initial_jacobian(r);
    if (!(j0 > 0.0)) {
      finite = false;
      continue;
    }
    for (std::size_t q = 0; q < fan.t.size(); ++q) {
      const double t = fan.t[q];
      if (t > t_cap) continue;
      const double j = fan.jacobian[r][q];
      ++out.samples;
      if (t == 0.0) {
        out.t0_ratio_min = std::min(out.t0_ratio_min, j / j0);
        out.t0_ratio_max = std::max(out.t0_ratio_max, j / j0);
        continue;
      }
      out.min_jacobian = std::min(out.min_jacobian, j);
      if (!(j > 0.0)) {
        ++out.nonpositive;
        continue;
      }
      c = std::max(c, std::log(j / j0) / std::log1p(-t));
    }
  }
  out.c_estimate = c;
  out.min_ratio = INFINITY;
  for (std::size_t r = 0; r < fan.jacobian.size(); ++r) {
    const double j0 = fan.initial_jacobian(r);
    for (std::size_t q = 0; q < fan.t.size(); ++q) {
      const double t = fan.t[q];
      if (t > t_cap || !(j0 > 0.0)) continue;
      out.min_ratio = std::min(out.min_ratio, fan.jacobian[r][q] / (std::pow(1 - t, c) * j0));
    }
  }
  out.pass = finite && std::isfinite(c) && out.nonpositive == 0 && out.samples > 0;
  return out;
}

double boundary_lp_norm(const BoundaryMeasure& f, double p) {
  return p == 1.0 ? f.total_variation() : f.density_lp_norm(p);
}

double check_lp_ratio(const ScalarGrid& sigma, const BoundaryMeasure& f, double p,
                      const DomainBoundary& domain) {
  const double fn = boundary_lp_norm(f, p);
  const double sn = lp_norm(sigma, p, 0.0, domain).norm;
  return fn > 0.0 ? sn / fn : (sn > 0.0 ? INFINITY : 0.0);
}

Ladder make_ladder(double p, std::vector<double> h, std::vector<double> values,
                   double threshold) {
  Ladder l;
  l.p = p;
  l.h = std::move(h);
  l.values = std::move(values);
  if (!l.values.empty() && l.values.front() > 0.0) {
    l.last_over_first = l.values.back() / l.values.front();
  } else {
    l.last_over_first = l.values.empty() || l.values.back() == 0.0 ? 1.0 : INFINITY;
  }
  l.bounded = l.last_over_first < threshold;
  l.increasing = l.values.size() > 1;
  for (std::size_t i = 1; i < l.values.size(); ++i) {
    l.increasing = l.increasing && l.values[i] > l.values[i - 1];
  }
  return l;
}

std::vector<Ladder> lp_ladder(const Problem& problem, const Metric& metric,
                              const std::vector<double>& hs, const std::vector<double>& ps) {
  std::vector<std::vector<double>> values(ps.size());
  for (double h : hs) {
    Problem level = problem;
    const double scale = hs.front() / h;
    level.n_source = static_cast<int>(std::lround(problem.n_source * scale));
    level.n_target = static_cast<int>(std::lround(problem.n_target * scale));
    const Solution s = solve(level, metric, quick(grid_for_domain_h(problem.domain, h)));
    for (std::size_t k = 0; k < ps.size(); ++k) {
      values[k].push_back(lp_norm(s.density.sigma, ps[k], 0.0, problem.domain).norm);
    }
  }
  std::vector<Ladder> out;
  for (std::size_t k = 0; k < ps.size(); ++k) out.push_back(make_ladder(ps[k], hs, values[k]));
  return out;
}

HolderReport check_holder_case(const Problem& problem, const Metric& metric, double alpha,
                               const std::vector<double>& hs) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::kInvalidArgument, "alpha must be in (0, 1]");
  HolderReport r;
  r.alpha = alpha;
  r.p = alpha >= 1.0 ? 16.0 : 2.0 / (1.0 - alpha);
  r.ladder = lp_ladder(problem, metric, hs, {r.p}).front();
  r.bounded = r.ladder.bounded;
  return r;
}

DualEquivalence check_dual_equivalence(const Potential& psi, const BoundaryDatum& g,
                                       const ConformalWeight& weight,
                                       const DomainBoundary& domain, double cost) {
  DualEquivalence out;
  out.cost = cost;
  const ScalarGrid& f = psi.grid;
  const GridSpec& grid = f.spec;
  const std::vector<char> mask = domain_mask(grid, domain);
  const int n = grid.size();
  std::vector<Vec2> z(n, Vec2{kNaN, kNaN});
  auto ok = [&](int i, int j) { return grid.in_range(i, j) && std::isfinite(f.at(i, j)); };
  int cells = 0, over = 0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int c = grid.index(i, j);
      if (!mask[c] || !ok(i, j) || !ok(i - 1, j) || !ok(i + 1, j) || !ok(i, j - 1) ||
          !ok(i, j + 1)) {
        continue;
      }
      // Mean gradient over the 2h box around the centre, Simpson on each edge.
      // A plain centred difference straddling a kink of psi can exceed k.
      double wc = 4.0 / 6.0, ww = 1.0 / 6.0;
      if (!ok(i - 1, j - 1) || !ok(i + 1, j - 1) || !ok(i - 1, j + 1) || !ok(i + 1, j + 1)) {
        wc = 1.0;
        ww = 0.0;
      }
      auto fw = [&](int a, int b) { return ww == 0.0 ? 0.0 : ww * f.at(a, b); };
      const double gx = (fw(i + 1, j - 1) + wc * f.at(i + 1, j) + fw(i + 1, j + 1) -
                         fw(i - 1, j - 1) - wc * f.at(i - 1, j) - fw(i - 1, j + 1)) /
                        (2 * grid.h);
      const double gy = (fw(i - 1, j + 1) + wc * f.at(i, j + 1) + fw(i + 1, j + 1) -
                         fw(i - 1, j - 1) - wc * f.at(i, j - 1) - fw(i + 1, j - 1)) /
                        (2 * grid.h);
      z[c] = rotate_cw(Vec2{gx, gy});
      const double ratio = norm(z[c]) / weight.value(grid.center(c));
      out.max_z_over_k = std::max(out.max_z_over_k, ratio);
      ++cells;
      if (ratio > 1.0 + 1e-3) ++over;
    }
  }
  out.fraction_over = cells > 0 ? static_cast<double>(over) / cells : 0.0;
  for (int j = 1; j + 1 < grid.ny; ++j) {
    for (int i = 1; i + 1 < grid.nx; ++i) {
      const Vec2 l = z[grid.index(i - 1, j)], r = z[grid.index(i + 1, j)];
      const Vec2 d = z[grid.index(i, j - 1)], u = z[grid.index(i, j + 1)];
      const double div = (r.x - l.x + u.y - d.y) / (2 * grid.h);
      if (std::isfinite(div)) {
        out.max_div = std::max(out.max_div, std::abs(div) * grid.h / weight.k_max());
      }
    }
  }
  // Inward normal: [z, n_in] = -d psi / d tau, so the pairing is -int g d psi.
  constexpr int kM = 4096;
  double prev = sample(f, domain.point(0.0));
  const double first = prev;
  for (int k = 0; k < kM; ++k) {
    const double th1 = kTwoPi * (k + 1) / kM;
    const double next = k + 1 == kM ? first : sample(f, domain.point(th1));
    const double mid = kTwoPi * (k + 0.5) / kM;
    if (std::isfinite(prev) && std::isfinite(next)) out.pairing -= (next - prev) * g.value(mid);
    prev = next;
  }
  out.gap = cost - out.pairing;
  out.relative_gap = cost > 0.0 ? out.gap / cost : out.gap;
  out.pass = out.fraction_over <= 0.01 && std::abs(out.relative_gap) <= 0.02;
  return out;
}

StabilityTable check_stability(const Problem& problem, const Metric& metric,
                               const GridSpec& grid, const std::vector<int>& ns) {
  StabilityTable table;
  Solution prev_sol;
  std::vector<Vec2> prev_bary;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    Problem level = problem;
    level.n_target = ns[k];
    Solution s = solve(level, metric, quick(grid));
    std::vector<Vec2> bary(s.sources.size());
    std::vector<double> wsum(s.sources.size(), 0.0);
    for (const Flow& fl : s.plan.flows) {
      bary[fl.source] = bary[fl.source] + fl.mass * s.targets[fl.target].position;
      wsum[fl.source] += fl.mass;
    }
    for (std::size_t i = 0; i < bary.size(); ++i) {
      if (wsum[i] > 0.0) bary[i] = bary[i] / wsum[i];
    }
    StabilityRow row;
    row.n = ns[k];
    row.cost = s.plan.total_cost;
    if (k > 0) {
      const StabilityRow& p = table.rows.back();
      row.cost_diff = std::abs(row.cost - p.cost);
      row.sigma_l1_diff = sum_abs_diff(s.density.sigma, prev_sol.density.sigma);
      row.sigma_plus_l1_diff = sum_abs_diff(s.density.sigma_plus, prev_sol.density.sigma_plus);
      row.sigma_minus_l1_diff =
          sum_abs_diff(s.density.sigma_minus, prev_sol.density.sigma_minus);
      for (std::size_t i = 0; i < bary.size() && i < prev_bary.size(); ++i) {
        row.displacement = std::max(row.displacement, distance(bary[i], prev_bary[i]));
      }
    }
    table.rows.push_back(row);
    prev_sol = std::move(s);
    prev_bary = std::move(bary);
  }
  table.monotone = table.rows.size() > 2;
  for (std::size_t k = 2; k < table.rows.size(); ++k) {
    const StabilityRow& a = table.rows[k - 1];
    const StabilityRow& b = table.rows[k];
    table.monotone = table.monotone && b.cost_diff <= a.cost_diff &&
                     b.sigma_l1_diff <= a.sigma_l1_diff;
  }
  return table;
}

LevelSetReport check_level_sets(const SolutionField& u, const RaySet& rays,
                                const DomainBoundary& domain, int count, double margin) {
  LevelSetReport out;
  std::vector<std::pair<double, int>> mids;
  for (std::size_t r = 0; r < rays.rays.size(); ++r) {
    const Ray& ray = rays.rays[r];
    if (ray.g_hi > ray.g_lo) mids.push_back({0.5 * (ray.g_lo + ray.g_hi), static_cast<int>(r)});
  }
  if (mids.empty()) return out;
  std::sort(mids.begin(), mids.end());
  const double step = margin / 2;
  for (int q = 1; q <= count; ++q) {
    const double t = mids[static_cast<std::size_t>(
                              std::floor(q / (count + 1.0) * (mids.size() - 1) + 0.5))]
                         .first;
    std::vector<std::vector<Vec2>> carriers;
    for (const Ray& ray : rays.rays) {
      if (ray.g_lo < t && t < ray.g_hi) carriers.push_back(ray.geodesic.points);
    }
    const auto contours = contour_lines(u, t);
    double hd = 0.0;
    if (contours.empty()) hd = INFINITY;
    for (const auto& line : contours) {
      for (Vec2 z : line) {
        if (domain.distance_to_boundary(z) <= margin) continue;
        double best = INFINITY;
        for (const auto& c : carriers) best = std::min(best, polyline_distance(c, z));
        hd = std::max(hd, best);
      }
    }
    for (const auto& c : carriers) {
      for (std::size_t s = 0; s + 1 < c.size(); ++s) {
        const int pieces = std::max(1, static_cast<int>(std::ceil(distance(c[s], c[s + 1]) / step)));
        for (int k = 0; k < pieces; ++k) {
          const Vec2 z = c[s] + (static_cast<double>(k) / pieces) * (c[s + 1] - c[s]);
          if (domain.distance_to_boundary(z) <= margin) continue;
          double best = INFINITY;
          for (const auto& line : contours) best = std::min(best, polyline_distance(line, z));
          hd = std::max(hd, best);
        }
      }
    }
    out.levels.push_back(t);
    out.hausdorff.push_back(hd);
    out.max_hausdorff = std::max(out.max_hausdorff, hd);
  }
  return out;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "convexity",  "metric",          "duality",        "crossings", "divergence",
      "density",    "lp",              "jacobian",       "dual_equivalence",
      "reconstruction", "level_sets",  "lp_ladder",      "holder",    "stability"};
  return names;
}

namespace {

std::vector<double> ladder_h(const Solution& s, int levels) {
  std::vector<double> hs;
  for (int k = levels - 1; k >= 0; --k) hs.push_back(s.grid.h * std::ldexp(1.0, k));
  return hs;
}

void put_ladder(CheckResult& r, const Ladder& l) {
  const std::string tag = "p" + p_tag(l.p) + "_";
  for (std::size_t k = 0; k < l.values.size(); ++k) {
    r.set(tag + "norm_" + std::to_string(k), l.values[k]);
  }
  r.set(tag + "last_over_first", l.last_over_first);
}

CheckResult check_metric(const Problem& problem, const Metric& metric, const Solution& s,
                         std::uint64_t seed) {
  CheckResult r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const DomainBoundary& dom = problem.domain;
  const double k_min = problem.weight.k_min();
  double sym = 0.0, tri = 0.0, lower = 0.0;
  const double tol = 10 * problem.geodesic.rel_tol;
  for (int trial = 0; trial < 8; ++trial) {
    const Vec2 x = dom.point(angle(rng)), y = dom.point(angle(rng)), z = dom.point(angle(rng));
    const double dxy = metric.distance(x, y), dyx = metric.distance(y, x);
    const double dyz = metric.distance(y, z), dxz = metric.distance(x, z);
    const double scale = std::max({dxy, dyz, dxz, 1e-300});
    sym = std::max(sym, std::abs(dxy - dyx) / scale);
    tri = std::max(tri, (dxz - dxy - dyz) / scale);
    if (dxy > 0.0) lower = std::max(lower, (k_min * distance(x, y) - dxy) / dxy);
  }
  const double th = angle(rng);
  const Vec2 y = dom.point(th);
  const ScalarGrid field = metric.distance_field(y, s.grid);
  const std::vector<char> mask = domain_mask(s.grid, dom);
  std::vector<int> cells;
  for (int c = 0; c < s.grid.size(); ++c) {
    if (mask[c]) cells.push_back(c);
  }
  double fmm = 0.0;
  std::uniform_int_distribution<std::size_t> pick(0, cells.empty() ? 0 : cells.size() - 1);
  for (int trial = 0; trial < 20 && !cells.empty(); ++trial) {
    const int c = cells[pick(rng)];
    fmm = std::max(fmm, std::abs(field.values[c] - metric.distance(s.grid.center(c), y)));
  }
  const double fmm_tol = 3 * s.grid.h * problem.weight.k_max();
  r.set("symmetry_rel", sym);
  r.set("triangle_excess_rel", tri);
  r.set("lower_bound_excess_rel", lower);
  r.set("fmm_max_error", fmm);
  r.set("fmm_tolerance", fmm_tol);
  r.pass = sym <= tol && tri <= tol && lower <= tol && fmm <= fmm_tol;
  return r;
}

}  // namespace

CheckResult run_check(const std::string& name, const Problem& problem, const Metric& metric,
                      const Solution& s, const CheckOptions& options) {
  CheckResult r;
  const double h = s.grid.h;
  const double cost = s.plan.total_cost;
  if (name == "convexity") {
    const ConvexityReport c = s.convexity ? *s.convexity : convexity_certificate(metric, 48);
    r.set("min_nu_dot_n", c.min_nu_dot_n);
    r.set("min_ratio", c.min_ratio);
    r.set("violations", c.violations);
    r.set("pairs", c.pairs);
    r.pass = c.passed();
    r.inconclusive = c.near_degenerate;
    if (c.near_degenerate) r.notes.push_back("uniform convexity constant below 1e-3");
  } else if (name == "metric") {
    r = check_metric(problem, metric, s, options.seed);
  } else if (name == "duality") {
    std::vector<double> ms, mt;
    for (const auto& a : s.sources) ms.push_back(a.mass);
    for (const auto& b : s.targets) mt.push_back(b.mass);
    const TransportPlan lp = ms.empty() ? TransportPlan{} : solve_lp(ms, mt, s.cost);
    double dual = 0.0;
    for (std::size_t i = 0; i < lp.psi_source.size(); ++i) dual += lp.psi_source[i] * ms[i];
    for (std::size_t j = 0; j < lp.psi_target.size(); ++j) dual -= lp.psi_target[j] * mt[j];
    const double gap = lp.total_cost > 0.0 ? (lp.total_cost - dual) / lp.total_cost : 0.0;
    const double agree = lp.total_cost > 0.0 ? (cost - lp.total_cost) / lp.total_cost : cost;
    r.set("lp_cost", lp.total_cost);
    r.set("plan_cost", cost);
    r.set("dual_value", dual);
    r.set("relative_gap", gap);
    r.set("plan_vs_lp_relative", agree);
    r.pass = std::abs(gap) <= 1e-6 && std::abs(agree) <= 1e-9;
  } else if (name == "crossings") {
    const CrossingReport c = count_interior_crossings(s.rays, h);
    r.set("crossings", c.crossings);
    r.set("rays", static_cast<double>(s.rays.rays.size()));
    r.pass = c.crossings == 0;
  } else if (name == "divergence") {
    const double res =
        divergence_residual(s.flow, problem.weight, s.sources, s.targets, s.grid.box());
    r.set("residual", res);
    r.set("tolerance", 2 * h);
    r.pass = res <= 2 * h;
  } else if (name == "density") {
    double mass = 0.0, split_err = 0.0, excess = 0.0;
    for (int c = 0; c < s.grid.size(); ++c) {
      const double sg = s.density.sigma.values[c];
      mass += sg * h * h;
      split_err = std::max(split_err, std::abs(sg - s.density.sigma_plus.values[c] -
                                               s.density.sigma_minus.values[c]));
      excess = std::max(excess, norm(s.flow.values[c]) - sg * (1 + 1e-12));
    }
    const double rel = cost > 0.0 ? std::abs(mass - cost) / cost : mass;
    r.set("sigma_mass", mass);
    r.set("plan_cost", cost);
    r.set("mass_relative_error", rel);
    r.set("split_max_error", split_err);
    r.set("flow_excess", std::max(excess, 0.0));
    r.set("collar_mass", lp_norm(s.density.sigma, 1.0, 2 * h, problem.domain).collar_mass);
    if (s.potential) {
      const FlowAlignment a = flow_alignment(s.flow, s.density.sigma, s.potential->grid);
      r.set("alignment_max_deg", a.max_angle_deg);
      r.set("alignment_p95_deg", a.p95_angle_deg);
    }
    r.pass = rel <= 1e-3 && excess <= 0.0 && split_err <= 1e-9 * (1 + mass);
  } else if (name == "lp") {
    bool ok = true;
    for (double p : options.p_values) {
      if (p > 1.0 && !(boundary_lp_norm(s.f, p) > 0.0)) {
        r.notes.push_back("f has no density part; p = " + p_tag(p) + " skipped");
        continue;
      }
      const double ratio = check_lp_ratio(s.density.sigma, s.f, p, problem.domain);
      r.set("ratio_p" + p_tag(p), ratio);
      if (p == 1.0) {
        const double bound = s.cost.rows > 0 ? s.cost.max_entry() : 0.0;
        r.set("cost_bound", bound);
        ok = ok && ratio <= bound * (1 + 1e-6);
      }
      ok = ok && std::isfinite(ratio);
    }
    r.pass = ok;
  } else if (name == "jacobian") {
    const double target = s.targets.empty() ? 0.0 : s.targets.front().theta;
    std::vector<double> thetas, ts;
    for (int i = 0; i < 24; ++i) thetas.push_back(target + 0.25 + (kTwoPi - 0.5) * (i + 0.5) / 24);
    for (int i = 0; i < 20; ++i) ts.push_back(0.05 * i);
    const JacobianBound b = check_jacobian_bound(jacobian_fan(metric, thetas, target, ts));
    r.set("c_estimate", b.c_estimate);
    r.set("min_ratio", b.min_ratio);
    r.set("t0_ratio_min", b.t0_ratio_min);
    r.set("t0_ratio_max", b.t0_ratio_max);
    r.set("min_jacobian", b.min_jacobian);
    r.set("nonpositive", b.nonpositive);
    r.pass = b.pass;
  } else if (name == "dual_equivalence") {
    if (!s.potential) fail(ErrorCode::kInvalidArgument, "dual_equivalence needs the potential");
    const DualEquivalence d = check_dual_equivalence(*s.potential, problem.datum, problem.weight,
                                                     problem.domain, cost);
    r.set("max_z_over_k", d.max_z_over_k);
    r.set("fraction_over", d.fraction_over);
    r.set("max_div", d.max_div);
    r.set("pairing", d.pairing);
    r.set("cost", d.cost);
    r.set("relative_gap", d.relative_gap);
    r.pass = d.pass;
  } else if (name == "reconstruction") {
    if (!s.u_flow) fail(ErrorCode::kInvalidArgument, "reconstruction needs u");
    const BoundaryDatum& g = problem.datum;
    const SolutionField& u = *s.u_flow;
    const double osc = g.max_value() - g.min_value();
    const double tv = g.total_variation();
    double area = 0.0, lo = INFINITY, hi = -INFINITY;
    for (int c = 0; c < s.grid.size(); ++c) {
      if (!u.mask[c]) continue;
      area += h * h;
      lo = std::min(lo, u.u.values[c]);
      hi = std::max(hi, u.u.values[c]);
    }
    const double trace = trace_error(u, g, problem.domain);
    const double trace_tol = 8 * h * tv;
    const double wtv = weighted_total_variation(u, problem.weight);
    const double tv_allow = 4 * h * problem.weight.k_max() * problem.domain.perimeter() * osc;
    const double range_tol = 0.05 * osc + 1e-9;
    r.set("trace_error", trace);
    r.set("trace_tolerance", trace_tol);
    r.set("u_min", lo);
    r.set("u_max", hi);
    r.set("weighted_tv", wtv);
    r.set("plan_cost", cost);
    r.set("tv_allowance", tv_allow);
    bool ok = trace <= trace_tol + 1e-12 && lo >= g.min_value() - range_tol &&
              hi <= g.max_value() + range_tol && wtv <= cost + tv_allow;
    if (s.u_rays) {
      const double l1 = l1_difference(u, *s.u_rays);
      r.set("ray_sweep_l1", l1);
      r.set("ray_sweep_tolerance", 5 * h * osc * area);
      ok = ok && l1 <= 5 * h * osc * area + 1e-12;
    }
    r.pass = ok;
  } else if (name == "level_sets") {
    if (!s.u_flow) fail(ErrorCode::kInvalidArgument, "level_sets needs u");
    const LevelSetReport l = check_level_sets(*s.u_flow, s.rays, problem.domain, 5, 2 * h);
    for (std::size_t k = 0; k < l.levels.size(); ++k) {
      r.set("level_" + std::to_string(k), l.levels[k]);
      r.set("hausdorff_" + std::to_string(k), l.hausdorff[k]);
    }
    r.set("max_hausdorff_cells", l.max_hausdorff / h);
    r.pass = l.max_hausdorff <= 2 * h;
  } else if (name == "lp_ladder") {
    const auto ladders =
        lp_ladder(problem, metric, ladder_h(s, options.ladder_levels), options.p_values);
    bool ok = true;
    for (const Ladder& l : ladders) {
      put_ladder(r, l);
      ok = ok && l.bounded;
    }
    r.pass = ok;
  } else if (name == "holder") {
    const HolderReport hr =
        check_holder_case(problem, metric, options.holder_alpha, ladder_h(s, options.ladder_levels));
    r.set("alpha", hr.alpha);
    r.set("p", hr.p);
    put_ladder(r, hr.ladder);
    r.pass = hr.bounded;
  } else if (name == "stability") {
    const StabilityTable t = check_stability(problem, metric, s.grid, options.stability_n);
    for (const StabilityRow& row : t.rows) {
      const std::string tag = "n" + std::to_string(row.n) + "_";
      r.set(tag + "cost", row.cost);
      r.set(tag + "cost_diff", row.cost_diff);
      r.set(tag + "sigma_l1_diff", row.sigma_l1_diff);
      r.set(tag + "sigma_plus_l1_diff", row.sigma_plus_l1_diff);
      r.set(tag + "sigma_minus_l1_diff", row.sigma_minus_l1_diff);
      r.set(tag + "displacement", row.displacement);
    }
    r.pass = t.monotone;
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown check '" + name + "'");
  }
  r.name = name;
  return r;
}

}  // namespace geolgp
