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

#include "geolgp/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <utility>

#include "geolgp/density.hpp"

namespace geolgp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kTraceSamples = 1024;

// Cell used for the trace at boundary parameter theta.
int trace_cell(const GridSpec& grid, const std::vector<char>& mask,
               const DomainBoundary& domain, double theta) {
  const Vec2 p = domain.point(theta) + (1.5 * grid.h) * domain.inward_normal(theta);
  const int ci = grid.cell_x(p.x), cj = grid.cell_y(p.y);
  int best = -1;
  double best_d = INFINITY;
  for (int j = cj - 2; j <= cj + 2; ++j) {
    for (int i = ci - 2; i <= ci + 2; ++i) {
      if (!grid.in_range(i, j) || !mask[grid.index(i, j)]) continue;
      const double d = distance(grid.center(i, j), p);
      if (d < best_d) {
        best_d = d;
        best = grid.index(i, j);
      }
    }
  }
  return best;
}

void fill_trace(SolutionField& f, const DomainBoundary& domain) {
  f.trace_theta.clear();
  f.trace.clear();
  for (int k = 0; k < kTraceSamples; ++k) {
    const double th = kTwoPi * (k + 0.5) / kTraceSamples;
    const int c = trace_cell(f.u.spec, f.mask, domain, th);
    f.trace_theta.push_back(th);
    f.trace.push_back(c >= 0 ? f.u.values[c] : kNaN);
  }
}

struct DistanceToRay {
  double dist = INFINITY;
  double side = 0.0;  // > 0 left of the direction of travel
};

DistanceToRay ray_distance(const std::vector<Vec2>& pts, Vec2 z) {
  DistanceToRay out;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const Vec2 a = pts[s], b = pts[s + 1];
    const double d = segment_distance(z, a, b);
    if (d < out.dist) {
      out.dist = d;
      out.side = cross(b - a, z - a);
    }
  }
  return out;
}

}  // namespace

SolutionField flow_to_u(const VectorGrid& v, const ConformalWeight& weight,
                        const BoundaryDatum& g, const DomainBoundary& domain,
                        PoissonOptions options) {
  const GridSpec& grid = v.spec;
  SolutionField f;
  f.mask = domain_mask(grid, domain);
  f.u = ScalarGrid(grid, kNaN);
  const int n = grid.size();
  std::vector<int> id(n, -1);
  std::vector<int> cells;
  for (int c = 0; c < n; ++c) {
    if (f.mask[c]) {
      id[c] = static_cast<int>(cells.size());
      cells.push_back(c);
    }
  }
  const int m = static_cast<int>(cells.size());
  if (m == 0) fail(ErrorCode::kInvalidArgument, "grid has no cells inside the domain");

  std::vector<Vec2> w(n);
  for (int c : cells) {
    const Vec2 vc = v.values[c];
    if (vc.x != 0.0 || vc.y != 0.0) w[c] = rotate_cw(vc / weight.value(grid.center(c)));
  }
  struct Edge {
    int a, b;
    double q;
  };
  std::vector<Edge> edges;
  std::vector<double> deg(m, 0.0), rhs(m, 0.0);
  for (int c : cells) {
    const int i = c % grid.nx, j = c / grid.nx;
    if (i + 1 < grid.nx && f.mask[c + 1]) {
      edges.push_back({id[c], id[c + 1], 0.5 * grid.h * (w[c].x + w[c + 1].x)});
    }
    if (j + 1 < grid.ny && f.mask[c + grid.nx]) {
      edges.push_back({id[c], id[c + grid.nx], 0.5 * grid.h * (w[c].y + w[c + grid.nx].y)});
    }
  }
  for (const Edge& e : edges) {
    deg[e.a] += 1.0;
    deg[e.b] += 1.0;
    rhs[e.b] += e.q;
    rhs[e.a] -= e.q;
  }
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int k = 0; k < m; ++k) y[k] = deg[k] * x[k];
    for (const Edge& e : edges) {
      y[e.a] -= x[e.b];
      y[e.b] -= x[e.a];
    }
  };
  auto project = [&](std::vector<double>& x) {
    double mean = 0.0;
    for (double t : x) mean += t;
    mean /= m;
    for (double& t : x) t -= mean;
  };
  project(rhs);
  std::vector<double> x(m, 0.0), r = rhs, z(m), p(m), ap(m);
  double bnorm = 0.0;
  for (double t : rhs) bnorm += t * t;
  bnorm = std::sqrt(bnorm);
  if (bnorm > 0.0) {
    for (int k = 0; k < m; ++k) z[k] = deg[k] > 0 ? r[k] / deg[k] : r[k];
    p = z;
    double rz = 0.0;
    for (int k = 0; k < m; ++k) rz += r[k] * z[k];
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      apply(p, ap);
      double pap = 0.0;
      for (int k = 0; k < m; ++k) pap += p[k] * ap[k];
      if (pap <= 0.0) break;
      const double alpha = rz / pap;
      double rr = 0.0;
      for (int k = 0; k < m; ++k) {
        x[k] += alpha * p[k];
        r[k] -= alpha * ap[k];
        rr += r[k] * r[k];
      }
      if (std::sqrt(rr) <= options.rel_tol * bnorm) {
        converged = true;
        break;
      }
      double rz_new = 0.0;
      for (int k = 0; k < m; ++k) {
        z[k] = deg[k] > 0 ? r[k] / deg[k] : r[k];
        rz_new += r[k] * z[k];
      }
      const double beta = rz_new / rz;
      rz = rz_new;
      for (int k = 0; k < m; ++k) p[k] = z[k] + beta * p[k];
    }
    if (!converged) fail(ErrorCode::kNoConvergence, "Poisson solve did not converge");
    project(x);
  }
  for (int k = 0; k < m; ++k) f.u.values[cells[k]] = x[k];

  fill_trace(f, domain);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < f.trace.size(); ++k) {
    if (!std::isfinite(f.trace[k])) continue;
    const double wgt = domain.speed(f.trace_theta[k]);
    num += wgt * (g.value(f.trace_theta[k]) - f.trace[k]);
    den += wgt;
  }
  const double shift = den > 0.0 ? num / den : 0.0;
  for (int c : cells) f.u.values[c] += shift;
  for (double& t : f.trace) t += shift;
  return f;
}

SolutionField ray_sweep_u(const RaySet& rays, const BoundaryDatum& g,
                          const DomainBoundary& domain, const GridSpec& grid) {
  const CrossingReport cr = count_interior_crossings(rays, grid.h);
  if (cr.crossings > 0) {
    fail(ErrorCode::kCrossingRays, "rays " + std::to_string(cr.first_ray) + " and " +
                                       std::to_string(cr.second_ray) + " cross");
  }
  SolutionField f;
  f.mask = domain_mask(grid, domain);
  f.u = ScalarGrid(grid, kNaN);
  const int n = grid.size();
  std::vector<std::vector<int>> on_cell(n);
  for (std::size_t r = 0; r < rays.rays.size(); ++r) {
    const auto& pts = rays.rays[r].geodesic.points;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      traverse_segment(grid, pts[s], pts[s + 1], [&](int c, double, double) {
        auto& lst = on_cell[c];
        if (lst.empty() || lst.back() != static_cast<int>(r)) lst.push_back(static_cast<int>(r));
      });
    }
  }
  for (int c = 0; c < n; ++c) {
    if (!f.mask[c] || on_cell[c].empty()) continue;
    double v = -INFINITY;
    for (int r : on_cell[c]) v = std::max(v, rays.rays[r].g_hi);
    f.u.values[c] = v;
  }

  std::vector<int> comp(n, -1);
  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  for (int start = 0; start < n; ++start) {
    if (!f.mask[start] || !on_cell[start].empty() || comp[start] >= 0) continue;
    std::vector<int> members;
    std::vector<int> touching;
    std::queue<int> q;
    q.push(start);
    comp[start] = start;
    while (!q.empty()) {
      const int c = q.front();
      q.pop();
      members.push_back(c);
      const int i = c % grid.nx, j = c / grid.nx;
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        if (!grid.in_range(ii, jj)) continue;
        const int nb = grid.index(ii, jj);
        if (!on_cell[nb].empty()) {
          touching.insert(touching.end(), on_cell[nb].begin(), on_cell[nb].end());
          continue;
        }
        if (!f.mask[nb] || comp[nb] >= 0) continue;
        comp[nb] = start;
        q.push(nb);
      }
    }
    std::sort(touching.begin(), touching.end());
    touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
    for (int c : members) {
      const Vec2 z = grid.center(c);
      const double tb = domain.closest_param(z);
      const double gb = g.value(tb);
      const double db = distance(domain.point(tb), z);
      if (touching.empty()) {
        f.u.values[c] = gb;
        continue;
      }
      double d1 = INFINITY, v1 = 0.0, d2 = db, v2 = gb;
      for (int r : touching) {
        const Ray& ray = rays.rays[r];
        const DistanceToRay dr = ray_distance(ray.geodesic.points, z);
        const double val = dr.side > 0.0 ? ray.g_lo : ray.g_hi;
        if (dr.dist < d1) {
          if (d1 < d2) {
            d2 = d1;
            v2 = v1;
          }
          d1 = dr.dist;
          v1 = val;
        } else if (dr.dist < d2) {
          d2 = dr.dist;
          v2 = val;
        }
      }
      f.u.values[c] = d1 + d2 > 0.0 ? (v1 * d2 + v2 * d1) / (d1 + d2) : v1;
    }
  }
  fill_trace(f, domain);
  return f;
}

std::vector<std::vector<Vec2>> contour_lines(const SolutionField& field, double level) {
  const GridSpec& g = field.u.spec;
  const auto& u = field.u.values;
  using Key = std::pair<int, int>;  // grid edge between two cell centres
  std::map<Key, Vec2> point_of;
  std::vector<std::pair<Key, Key>> segs;
  auto edge_point = [&](int a, int b) {
    const Key k{std::min(a, b), std::max(a, b)};
    if (!point_of.count(k)) {
      const double ua = u[a], ub = u[b];
      const double t = ub != ua ? std::clamp((level - ua) / (ub - ua), 0.0, 1.0) : 0.5;
      point_of[k] = g.center(a) + t * (g.center(b) - g.center(a));
    }
    return k;
  };
  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      const int c[4] = {g.index(i, j), g.index(i + 1, j), g.index(i + 1, j + 1),
                        g.index(i, j + 1)};
      bool ok = true;
      for (int k : c) ok = ok && field.mask[k] && std::isfinite(u[k]);
      if (!ok) continue;
      int code = 0;
      for (int k = 0; k < 4; ++k) code |= (u[c[k]] >= level ? 1 : 0) << k;
      if (code == 0 || code == 15) continue;
      std::vector<Key> cut;
      for (int k = 0; k < 4; ++k) {
        const int a = c[k], b = c[(k + 1) % 4];
        if ((u[a] >= level) != (u[b] >= level)) cut.push_back(edge_point(a, b));
      }
      if (cut.size() == 2) {
        segs.push_back({cut[0], cut[1]});
      } else if (cut.size() == 4) {
        // Saddle: decide by the centre value. Edges are ordered bottom,
        // right, top, left.
        const double centre = 0.25 * (u[c[0]] + u[c[1]] + u[c[2]] + u[c[3]]);
        const bool c0_in = u[c[0]] >= level;
        if ((centre >= level) == c0_in) {
          segs.push_back({cut[0], cut[1]});
          segs.push_back({cut[2], cut[3]});
        } else {
          segs.push_back({cut[0], cut[3]});
          segs.push_back({cut[1], cut[2]});
        }
      }
    }
  }
  std::map<Key, std::vector<int>> incident;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    incident[segs[s].first].push_back(static_cast<int>(s));
    incident[segs[s].second].push_back(static_cast<int>(s));
  }
  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<Vec2>> lines;
  auto extend = [&](std::vector<Key>& chain) {
    while (true) {
      const Key end = chain.back();
      int next = -1;
      for (int s : incident[end]) {
        if (!used[s]) {
          next = s;
          break;
        }
      }
      if (next < 0) return;
      used[next] = 1;
      chain.push_back(segs[next].first == end ? segs[next].second : segs[next].first);
    }
  };
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    used[s] = 1;
    std::vector<Key> fwd{segs[s].first, segs[s].second};
    extend(fwd);
    std::vector<Key> back{segs[s].first};
    extend(back);
    std::vector<Vec2> line;
    for (auto it = back.rbegin(); it != back.rend(); ++it) line.push_back(point_of[*it]);
    for (std::size_t k = 1; k < fwd.size(); ++k) line.push_back(point_of[fwd[k]]);
    lines.push_back(std::move(line));
  }
  return lines;
}

double w1p_norm(const SolutionField& field, const ScalarGrid& sigma, double p) {
  const double area = field.u.spec.h * field.u.spec.h;
  double acc = 0.0;
  for (int c = 0; c < field.u.spec.size(); ++c) {
    if (!field.mask[c] || !std::isfinite(field.u.values[c])) continue;
    const double v = std::abs(field.u.values[c]);
    acc = std::isinf(p) ? std::max(acc, v) : acc + std::pow(v, p) * area;
  }
  const double un = std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
  double sacc = 0.0;
  for (double s : sigma.values) {
    sacc = std::isinf(p) ? std::max(sacc, std::abs(s)) : sacc + std::pow(std::abs(s), p) * area;
  }
  return un + (std::isinf(p) ? sacc : std::pow(sacc, 1.0 / p));
}

double l1_difference(const SolutionField& a, const SolutionField& b) {
  if (!(a.u.spec == b.u.spec)) fail(ErrorCode::kInvalidArgument, "fields on different grids");
  double acc = 0.0;
  for (int c = 0; c < a.u.spec.size(); ++c) {
    if (!a.mask[c] || !b.mask[c]) continue;
    const double d = a.u.values[c] - b.u.values[c];
    if (std::isfinite(d)) acc += std::abs(d);
  }
  return acc * a.u.spec.h * a.u.spec.h;
}

double weighted_total_variation(const SolutionField& field, const ConformalWeight& weight) {
  const GridSpec& g = field.u.spec;
  const auto& u = field.u.values;
  auto val = [&](int i, int j, double fallback) {
    if (!g.in_range(i, j)) return fallback;
    const int c = g.index(i, j);
    return field.mask[c] && std::isfinite(u[c]) ? u[c] : fallback;
  };
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int c = g.index(i, j);
      if (!field.mask[c] || !std::isfinite(u[c])) continue;
      const double uc = u[c];
      const double dxp = val(i + 1, j, uc) - uc, dxm = uc - val(i - 1, j, uc);
      const double dyp = val(i, j + 1, uc) - uc, dym = uc - val(i, j - 1, uc);
      double mag = 0.0;
      for (double dx : {dxp, dxm}) {
        for (double dy : {dyp, dym}) mag += 0.25 * std::hypot(dx, dy);
      }
      acc += weight.value(g.center(c)) * mag * g.h;
    }
  }
  return acc;
}

double trace_error(const SolutionField& field, const BoundaryDatum& g,
                   const DomainBoundary& domain) {
  double acc = 0.0;
  const double dth = kTwoPi / static_cast<double>(field.trace.size());
  for (std::size_t k = 0; k < field.trace.size(); ++k) {
    if (!std::isfinite(field.trace[k])) continue;
    acc += std::abs(field.trace[k] - g.value(field.trace_theta[k])) *
           domain.speed(field.trace_theta[k]) * dth;
  }
  return acc;
}

}  // namespace geolgp
