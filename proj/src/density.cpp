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

#include "geolgp/density.hpp"

#include <algorithm>
#include <cmath>

#include "geolgp/domain.hpp"

namespace geolgp {

void traverse_segment(const GridSpec& grid, Vec2 a, Vec2 b,
                      const std::function<void(int, double, double)>& fn) {
  const Box box = grid.box();
  if (!box.contains(a) || !box.contains(b)) {
    fail(ErrorCode::kRayOutsideGrid, "ray leaves the grid");
  }
  int i = std::clamp(grid.cell_x(a.x), 0, grid.nx - 1);
  int j = std::clamp(grid.cell_y(a.y), 0, grid.ny - 1);
  const Vec2 d = b - a;
  if (d.x == 0.0 && d.y == 0.0) return;
  const int step_i = d.x > 0 ? 1 : (d.x < 0 ? -1 : 0);
  const int step_j = d.y > 0 ? 1 : (d.y < 0 ? -1 : 0);
  auto first_cross = [&](double p, double dir, int cell, int step, double origin) {
    if (step == 0) return static_cast<double>(INFINITY);
    const double edge = origin + (cell + (step > 0 ? 1 : 0)) * grid.h;
    // Rounding in cell_x/cell_y can put p just past the edge.
    return std::max(0.0, (edge - p) / dir);
  };
  double t_max_x = first_cross(a.x, d.x, i, step_i, grid.origin.x);
  double t_max_y = first_cross(a.y, d.y, j, step_j, grid.origin.y);
  const double t_dx = step_i != 0 ? grid.h / std::abs(d.x) : INFINITY;
  const double t_dy = step_j != 0 ? grid.h / std::abs(d.y) : INFINITY;
  double t = 0.0;
  while (t < 1.0) {
    const double next = std::min({t_max_x, t_max_y, 1.0});
    if (next > t) fn(grid.index(i, j), t, next);
    t = next;
    if (t >= 1.0) break;
    if (t_max_x <= t_max_y) {
      i += step_i;
      t_max_x += t_dx;
    } else {
      j += step_j;
      t_max_y += t_dy;
    }
    if (!grid.in_range(i, j)) break;
  }
}

TransportDensity assemble_density(const ConformalWeight& weight, const RaySet& rays,
                                  const GridSpec& grid, double tau_split) {
  if (!(tau_split >= 0.0 && tau_split <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "tau_split must lie in [0, 1]");
  }
  TransportDensity out{ScalarGrid(grid), ScalarGrid(grid), ScalarGrid(grid)};
  const double inv_area = 1.0 / (grid.h * grid.h);
  for (const Ray& r : rays.rays) {
    const auto& pts = r.geodesic.points;
    const int n = static_cast<int>(pts.size());
    for (int s = 0; s + 1 < n; ++s) {
      const double ta = static_cast<double>(s) / (n - 1);
      const double tb = static_cast<double>(s + 1) / (n - 1);
      const Vec2 a = pts[s], b = pts[s + 1];
      const double len = distance(a, b);
      traverse_segment(grid, a, b, [&](int cell, double f0, double f1) {
        const Vec2 mid = a + (0.5 * (f0 + f1)) * (b - a);
        const double dep = r.mass * weight.value(mid) * len * inv_area;
        const double t0 = ta + f0 * (tb - ta), t1 = ta + f1 * (tb - ta);
        if (t1 <= tau_split) {
          out.sigma_plus.values[cell] += dep * (f1 - f0);
        } else if (t0 >= tau_split) {
          out.sigma_minus.values[cell] += dep * (f1 - f0);
        } else {
          const double w = (tau_split - t0) / (t1 - t0);
          out.sigma_plus.values[cell] += dep * (f1 - f0) * w;
          out.sigma_minus.values[cell] += dep * (f1 - f0) * (1.0 - w);
        }
      });
    }
  }
  for (int c = 0; c < grid.size(); ++c) {
    out.sigma.values[c] = out.sigma_plus.values[c] + out.sigma_minus.values[c];
  }
  return out;
}

VectorGrid assemble_flow(const ConformalWeight& weight, const RaySet& rays, const GridSpec& grid) {
  VectorGrid v(grid);
  const double inv_area = 1.0 / (grid.h * grid.h);
  for (const Ray& r : rays.rays) {
    const auto& pts = r.geodesic.points;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      const Vec2 a = pts[s], b = pts[s + 1];
      traverse_segment(grid, a, b, [&](int cell, double f0, double f1) {
        const Vec2 mid = a + (0.5 * (f0 + f1)) * (b - a);
        v.values[cell] += (r.mass * weight.value(mid) * (f1 - f0) * inv_area) * (b - a);
      });
    }
  }
  return v;
}

double divergence_residual(const VectorGrid& v, const ConformalWeight& weight,
                           const std::vector<BoundaryPoint>& sources,
                           const std::vector<BoundaryPoint>& targets, const Box& box) {
  const GridSpec& g = v.spec;
  double mass = 0.0;
  for (const auto& s : sources) mass += s.mass;
  if (mass <= 0.0) return 0.0;
  std::vector<double> kinv(g.size(), 0.0);
  for (int c = 0; c < g.size(); ++c) {
    if (v.values[c].x != 0.0 || v.values[c].y != 0.0) kinv[c] = 1.0 / weight.value(g.center(c));
  }
  const double lx = box.width(), ly = box.height();
  double worst = 0.0;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      const double wx = a * kPi / lx, wy = b * kPi / ly;
      auto phi = [&](Vec2 p) {
        return std::cos(wx * (p.x - box.lo.x)) * std::cos(wy * (p.y - box.lo.y));
      };
      double acc = 0.0;
      for (int c = 0; c < g.size(); ++c) {
        if (kinv[c] == 0.0) continue;
        const Vec2 p = g.center(c);
        const double cx = std::cos(wx * (p.x - box.lo.x)), sx = std::sin(wx * (p.x - box.lo.x));
        const double cy = std::cos(wy * (p.y - box.lo.y)), sy = std::sin(wy * (p.y - box.lo.y));
        const Vec2 grad{-wx * sx * cy, -wy * cx * sy};
        acc += dot(grad, v.values[c]) * kinv[c];
      }
      acc *= g.h * g.h;
      for (const auto& s : sources) acc += s.mass * phi(s.position);
      for (const auto& t : targets) acc -= t.mass * phi(t.position);
      const double lip = std::hypot(wx, wy);
      if (lip > 0.0) worst = std::max(worst, std::abs(acc) / (lip * mass));
    }
  }
  return worst;
}

LpNorm lp_norm(const ScalarGrid& sigma, double p, double collar, const DomainBoundary& domain) {
  LpNorm out;
  const GridSpec& g = sigma.spec;
  const double area = g.h * g.h;
  double acc = 0.0;
  for (int c = 0; c < g.size(); ++c) {
    const double v = std::abs(sigma.values[c]);
    if (std::isinf(p)) {
      acc = std::max(acc, v);
    } else {
      acc += std::pow(v, p) * area;
    }
    if (v != 0.0 && domain.signed_distance_estimate(g.center(c)) > -collar) {
      out.collar_mass += v * area;
    }
  }
  out.norm = std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
  return out;
}

FlowAlignment flow_alignment(const VectorGrid& v, const ScalarGrid& sigma, const ScalarGrid& psi,
                             double quantile) {
  FlowAlignment out;
  const GridSpec& g = sigma.spec;
  std::vector<double> positive;
  for (double s : sigma.values) {
    if (s > 0.0) positive.push_back(s);
  }
  if (positive.empty()) return out;
  std::sort(positive.begin(), positive.end());
  const double cut = positive[static_cast<std::size_t>(quantile * (positive.size() - 1))];
  std::vector<double> angles;
  for (int j = 1; j + 1 < g.ny; ++j) {
    for (int i = 1; i + 1 < g.nx; ++i) {
      const int c = g.index(i, j);
      if (!(sigma.values[c] > cut)) continue;
      const double l = psi.at(i - 1, j), r = psi.at(i + 1, j);
      const double d = psi.at(i, j - 1), u = psi.at(i, j + 1);
      if (!std::isfinite(l + r + d + u)) continue;
      const Vec2 grad{(r - l) / (2.0 * g.h), (u - d) / (2.0 * g.h)};
      const Vec2 vv = v.values[c];
      if (norm(grad) == 0.0 || norm(vv) == 0.0) continue;
      const double cosang = std::clamp(dot(vv, -grad) / (norm(vv) * norm(grad)), -1.0, 1.0);
      angles.push_back(std::acos(cosang) * 180.0 / kPi);
    }
  }
  if (angles.empty()) return out;
  std::sort(angles.begin(), angles.end());
  out.cells = static_cast<int>(angles.size());
  out.max_angle_deg = angles.back();
  out.p95_angle_deg = angles[static_cast<std::size_t>(0.95 * (angles.size() - 1))];
  return out;
}

}  // namespace geolgp
