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

#include "geolgp/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "parallel.hpp"

namespace geolgp {

std::vector<BoundaryPoint> place_atoms(const DomainBoundary& domain,
                                       const std::vector<BoundaryMeasure::Atom>& atoms) {
  std::vector<BoundaryPoint> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back({a.theta, domain.point(a.theta), a.mass});
  return out;
}

double CostMatrix::max_entry() const {
  double mx = 0.0;
  for (double c : entries) mx = std::max(mx, c);
  return mx;
}

CostMatrix cost_matrix(const Metric& metric, const std::vector<BoundaryPoint>& sources,
                       const std::vector<BoundaryPoint>& targets) {
  CostMatrix c;
  c.rows = static_cast<int>(sources.size());
  c.cols = static_cast<int>(targets.size());
  c.entries.assign(static_cast<std::size_t>(c.rows) * c.cols, 0.0);
  std::vector<Vec2> ys;
  for (const auto& t : targets) ys.push_back(t.position);
  parallel_for(c.rows, [&](int i) {
    const std::vector<Geodesic> geos = metric.connect_from(sources[i].position, ys);
    for (int j = 0; j < c.cols; ++j) {
      c.entries[static_cast<std::size_t>(i) * c.cols + j] = geos[j].weighted_length;
    }
  });
  return c;
}

namespace {

struct Event {
  double theta = 0.0;
  int atom = 0;
  bool source = true;
  double mass = 0.0;  // signed
};

// Minimum-cost non-crossing perfect matching of points in cyclic order whose
// signs alternate. Returns pairs of positions into `pts`.
std::vector<std::pair<int, int>> noncrossing_matching(const std::vector<Event>& pts,
                                                      const CostMatrix& cost) {
  const int n = static_cast<int>(pts.size());
  auto pair_cost = [&](int a, int b) {
    const Event& s = pts[a].source ? pts[a] : pts[b];
    const Event& t = pts[a].source ? pts[b] : pts[a];
    return cost.at(s.atom, t.atom);
  };
  std::vector<double> best(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
  std::vector<int> choice(static_cast<std::size_t>(n + 1) * (n + 1), -1);
  // best[i][j]: range [i, j) of even length.
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * (n + 1) + j; };
  for (int len = 2; len <= n; len += 2) {
    for (int i = 0; i + len <= n; ++i) {
      const int j = i + len;
      double b = INFINITY;
      int arg = -1;
      for (int k = i + 1; k < j; k += 2) {
        const double v = pair_cost(i, k) + best[at(i + 1, k)] + best[at(k + 1, j)];
        if (v < b) {
          b = v;
          arg = k;
        }
      }
      best[at(i, j)] = b;
      choice[at(i, j)] = arg;
    }
  }
  std::vector<std::pair<int, int>> out;
  std::vector<std::pair<int, int>> stack{{0, n}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    const int k = choice[at(i, j)];
    out.push_back({i, k});
    stack.push_back({i + 1, k});
    stack.push_back({k + 1, j});
  }
  return out;
}

}  // namespace

TransportPlan solve_noncrossing(const std::vector<BoundaryPoint>& sources,
                                const std::vector<BoundaryPoint>& targets,
                                const CostMatrix& cost, bool convex) {
  std::vector<double> ms, mt;
  for (const auto& s : sources) ms.push_back(s.mass);
  for (const auto& t : targets) mt.push_back(t.mass);
  if (!convex) {
    TransportPlan plan = solve_lp(ms, mt, cost);
    plan.warnings.push_back(
        "convexity certificate failed; non-crossing solver fell back to the LP");
    return plan;
  }
  const double sum_s = std::accumulate(ms.begin(), ms.end(), 0.0);
  const double sum_t = std::accumulate(mt.begin(), mt.end(), 0.0);
  if (std::abs(sum_s - sum_t) > 1e-9 * std::max(1.0, sum_s)) {
    fail(ErrorCode::kUnbalanced, "source and target masses differ");
  }
  for (double a : ms) {
    if (!(a > 0.0)) fail(ErrorCode::kInvalidArgument, "source masses must be positive");
  }
  for (double b : mt) {
    if (!(b > 0.0)) fail(ErrorCode::kInvalidArgument, "target masses must be positive");
  }

  std::vector<Event> events;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    events.push_back({wrap_angle(sources[i].theta), static_cast<int>(i), true, ms[i]});
  }
  for (std::size_t j = 0; j < targets.size(); ++j) {
    events.push_back({wrap_angle(targets[j].theta), static_cast<int>(j), false,
                      -mt[j] * sum_s / sum_t});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.theta < b.theta; });
  const int ne = static_cast<int>(events.size());
  std::vector<double> level(ne + 1, 0.0);  // level[k + 1] = S after event k
  for (int k = 0; k < ne; ++k) level[k + 1] = level[k] + events[k].mass;
  level[ne] = 0.0;

  // Levels closer than snap are the same level; otherwise rounding leaves
  // slivers whose midpoint coincides with an endpoint.
  const double snap = 1e-12 * sum_s;
  std::vector<double> cuts(level.begin(), level.end());
  std::sort(cuts.begin(), cuts.end());
  {
    std::vector<double> merged;
    for (double c : cuts) {
      if (merged.empty() || c - merged.back() > snap) merged.push_back(c);
    }
    cuts.swap(merged);
  }
  for (double& l : level) {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), l + snap);
    l = *std::prev(it);
  }

  struct Piece {
    double lo, hi;
  };
  std::map<std::pair<int, int>, std::vector<Piece>> pieces;
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> cache;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    if (hi - lo <= 0.0) continue;
    const double t = 0.5 * (lo + hi);
    std::vector<int> crossing;
    for (int k = 0; k < ne; ++k) {
      const double a = level[k], b = level[k + 1];
      if ((a < t && t < b) || (b < t && t < a)) crossing.push_back(k);
    }
    if (crossing.empty()) continue;
    if (crossing.size() % 2 != 0) {
      fail(ErrorCode::kDegenerate, "odd number of level crossings");
    }
    auto it = cache.find(crossing);
    if (it == cache.end()) {
      std::vector<Event> pts;
      for (int k : crossing) pts.push_back(events[k]);
      for (std::size_t q = 0; q < pts.size(); ++q) {
        if (pts[q].source == pts[(q + 1) % pts.size()].source) {
          fail(ErrorCode::kDegenerate, "level crossings do not alternate");
        }
      }
      it = cache.emplace(crossing, noncrossing_matching(pts, cost)).first;
    }
    for (const auto& [a, b] : it->second) {
      const Event& ea = events[crossing[a]];
      const Event& eb = events[crossing[b]];
      const int s = ea.source ? ea.atom : eb.atom;
      const int d = ea.source ? eb.atom : ea.atom;
      auto& list = pieces[{s, d}];
      if (!list.empty() && list.back().hi == lo) {
        list.back().hi = hi;
      } else {
        list.push_back({lo, hi});
      }
    }
  }

  TransportPlan plan;
  for (const auto& [key, list] : pieces) {
    for (const Piece& p : list) {
      Flow f;
      f.source = key.first;
      f.target = key.second;
      f.mass = p.hi - p.lo;
      f.cost = cost.at(f.source, f.target);
      f.level_lo = p.lo;
      f.level_hi = p.hi;
      plan.flows.push_back(f);
      plan.total_cost += f.mass * f.cost;
    }
  }
  std::stable_sort(plan.flows.begin(), plan.flows.end(), [](const Flow& a, const Flow& b) {
    return a.source != b.source ? a.source < b.source : a.level_lo < b.level_lo;
  });
  return plan;
}

Potential potential_from_plan(const Metric& metric, const TransportPlan& plan,
                              const std::vector<BoundaryPoint>& sources,
                              const std::vector<BoundaryPoint>& targets, const CostMatrix& cost,
                              const GridSpec& grid, double tol) {
  Potential pot;
  if (plan.psi_source.size() == sources.size() && plan.psi_target.size() == targets.size()) {
    pot.at_sources = plan.psi_source;
    pot.at_targets = plan.psi_target;
  } else {
    std::vector<double> ms, mt;
    for (const auto& s : sources) ms.push_back(s.mass);
    for (const auto& t : targets) mt.push_back(t.mass);
    const TransportPlan lp = solve_lp(ms, mt, cost);
    pot.at_sources = lp.psi_source;
    pot.at_targets = lp.psi_target;
  }
  double dual = 0.0;
  for (std::size_t i = 0; i < sources.size(); ++i) dual += pot.at_sources[i] * sources[i].mass;
  for (std::size_t j = 0; j < targets.size(); ++j) dual -= pot.at_targets[j] * targets[j].mass;
  pot.gap = plan.total_cost - dual;
  pot.relative_gap = plan.total_cost > 0.0 ? pot.gap / plan.total_cost : pot.gap;
  if (std::abs(pot.relative_gap) > tol) {
    fail(ErrorCode::kDualityGap, "duality gap " + std::to_string(pot.gap) + " (relative " +
                                     std::to_string(pot.relative_gap) + ")");
  }
  std::vector<Vec2> ys;
  for (const auto& t : targets) ys.push_back(t.position);
  // Solve on a finer grid (at least 2x, and at least 512 cells across) and
  // average the children of each cell.
  const int across = std::max(grid.nx, grid.ny);
  const int r = std::max(2, (512 + across - 1) / across);
  GridSpec fine = grid;
  fine.nx *= r;
  fine.ny *= r;
  fine.h /= r;
  const ScalarGrid f = metric.distance_field(ys, pot.at_targets, fine, 4.0 * grid.h);
  pot.grid = ScalarGrid(grid, INFINITY);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double acc = 0.0;
      bool finite = true;
      for (int dj = 0; dj < r && finite; ++dj) {
        for (int di = 0; di < r; ++di) {
          const double v = f.at(r * i + di, r * j + dj);
          finite = finite && std::isfinite(v);
          acc += v;
        }
      }
      if (finite) pot.grid.values[grid.index(i, j)] = acc / (r * r);
    }
  }
  return pot;
}

std::vector<MongeEntry> monge_map(const TransportPlan& plan) {
  std::vector<MongeEntry> out;
  const bool split_atoms = !plan.flows.empty() && plan.flows.front().has_levels();
  for (const Flow& f : plan.flows) {
    if (split_atoms || out.empty() || out.back().source != f.source) {
      MongeEntry e;
      e.source = f.source;
      out.push_back(e);
    }
    MongeEntry& e = out.back();
    e.mass += f.mass;
    e.targets.push_back(f.target);
    e.masses.push_back(f.mass);
  }
  return out;
}

double level_base(const BoundaryDatum& datum, const std::vector<BoundaryPoint>& sources,
                  const std::vector<BoundaryPoint>& targets) {
  std::vector<std::pair<double, double>> ev;
  for (const auto& s : sources) ev.push_back({wrap_angle(s.theta), s.mass});
  for (const auto& t : targets) ev.push_back({wrap_angle(t.theta), -t.mass});
  std::stable_sort(ev.begin(), ev.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  // S(theta) counts atoms at or before theta, starting from the first atom.
  constexpr int kSamples = 4096;
  double acc = 0.0;
  std::size_t k = 0;
  double s = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double th = kTwoPi * (i + 0.5) / kSamples;
    while (k < ev.size() && ev[k].first <= th) s += ev[k++].second;
    acc += datum.value(th) - s;
  }
  return acc / kSamples;
}

RaySet build_rays(const Metric& metric, const TransportPlan& plan,
                  const std::vector<BoundaryPoint>& sources,
                  const std::vector<BoundaryPoint>& targets, const BoundaryDatum* datum,
                  double g_base) {
  std::map<int, std::vector<int>> by_source;
  for (const Flow& f : plan.flows) {
    auto& v = by_source[f.source];
    if (std::find(v.begin(), v.end(), f.target) == v.end()) v.push_back(f.target);
  }
  std::vector<int> keys;
  for (const auto& [k, v] : by_source) keys.push_back(k);
  std::vector<std::vector<Geodesic>> geos(keys.size());
  parallel_for(static_cast<int>(keys.size()), [&](int q) {
    std::vector<Vec2> ys;
    for (int j : by_source[keys[q]]) ys.push_back(targets[j].position);
    try {
      geos[q] = metric.connect_from(sources[keys[q]].position, ys);
    } catch (const GeodesicError& e) {
      throw GeodesicError(e.code(),
                          std::string(e.what()) + " (source atom " + std::to_string(keys[q]) + ")",
                          e.best_candidate());
    }
  });
  RaySet rs;
  for (const Flow& f : plan.flows) {
    const std::size_t q = std::lower_bound(keys.begin(), keys.end(), f.source) - keys.begin();
    const auto& tl = by_source[f.source];
    const std::size_t j = std::find(tl.begin(), tl.end(), f.target) - tl.begin();
    Ray r;
    r.geodesic = geos[q][j];
    r.source = f.source;
    r.target = f.target;
    r.mass = f.mass;
    if (f.has_levels()) {
      r.g_lo = g_base + f.level_lo;
      r.g_hi = g_base + f.level_hi;
    } else if (datum) {
      r.g_lo = datum->left_limit(sources[f.source].theta);
      r.g_hi = datum->value(sources[f.source].theta);
    }
    rs.rays.push_back(std::move(r));
  }
  return rs;
}

namespace {

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

}  // namespace

CrossingReport count_interior_crossings(const RaySet& rays, double exclusion) {
  CrossingReport rep;
  struct Seg {
    int ray;
    Vec2 a, b;
  };
  std::vector<Seg> segs;
  Box box{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (std::size_t r = 0; r < rays.rays.size(); ++r) {
    const auto& pts = rays.rays[r].geodesic.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      segs.push_back({static_cast<int>(r), pts[i], pts[i + 1]});
      for (Vec2 p : {pts[i], pts[i + 1]}) {
        box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y)};
        box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y)};
      }
    }
  }
  if (segs.empty()) return rep;
  const double cell = std::max({exclusion, std::max(box.width(), box.height()) / 128.0, 1e-12});
  const int nx = static_cast<int>(box.width() / cell) + 1;
  const int ny = static_cast<int>(box.height() / cell) + 1;
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(nx) * ny);
  auto cx = [&](double x) { return std::clamp(static_cast<int>((x - box.lo.x) / cell), 0, nx - 1); };
  auto cy = [&](double y) { return std::clamp(static_cast<int>((y - box.lo.y) / cell), 0, ny - 1); };
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const Seg& g = segs[s];
    for (int j = cy(std::min(g.a.y, g.b.y)); j <= cy(std::max(g.a.y, g.b.y)); ++j) {
      for (int i = cx(std::min(g.a.x, g.b.x)); i <= cx(std::max(g.a.x, g.b.x)); ++i) {
        buckets[static_cast<std::size_t>(j) * nx + i].push_back(static_cast<int>(s));
      }
    }
  }
  auto near_end = [&](Vec2 p, int r) {
    const auto& g = rays.rays[r].geodesic;
    return distance(p, g.start()) <= exclusion || distance(p, g.end()) <= exclusion;
  };
  std::set<std::pair<int, int>> crossing_pairs;
  for (const auto& bucket : buckets) {
    for (std::size_t p = 0; p < bucket.size(); ++p) {
      for (std::size_t q = p + 1; q < bucket.size(); ++q) {
        const Seg& s1 = segs[bucket[p]];
        const Seg& s2 = segs[bucket[q]];
        if (s1.ray == s2.ray) continue;
        const Ray& r1 = rays.rays[s1.ray];
        const Ray& r2 = rays.rays[s2.ray];
        if (r1.source == r2.source && r1.target == r2.target) continue;
        const double o1 = orient(s1.a, s1.b, s2.a), o2 = orient(s1.a, s1.b, s2.b);
        const double o3 = orient(s2.a, s2.b, s1.a), o4 = orient(s2.a, s2.b, s1.b);
        if (!(o1 * o2 < 0.0 && o3 * o4 < 0.0)) continue;
        const Vec2 x = s1.a + (o3 / (o3 - o4)) * (s1.b - s1.a);
        if (near_end(x, s1.ray) || near_end(x, s2.ray)) continue;
        crossing_pairs.insert({std::min(s1.ray, s2.ray), std::max(s1.ray, s2.ray)});
      }
    }
  }
  rep.crossings = static_cast<int>(crossing_pairs.size());
  if (!crossing_pairs.empty()) {
    rep.first_ray = crossing_pairs.begin()->first;
    rep.second_ray = crossing_pairs.begin()->second;
  }
  return rep;
}

}  // namespace geolgp
