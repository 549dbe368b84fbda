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

// Second-order fast marching for |grad D| = k on cell centres.

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <utility>

#include "geolgp/metric.hpp"

namespace geolgp {
namespace {

enum : char { kFar = 0, kTrial = 1, kKnown = 2, kInactive = 3 };

// Solves sum_a alpha_a (u - c_a)^2 = rhs for the largest root with
// u >= max c_a, dropping the largest term while that fails.
double solve_upwind(std::vector<std::pair<double, double>> terms, double rhs) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  while (!terms.empty()) {
    double a = 0.0, b = 0.0, c = -rhs;
    for (const auto& [alpha, v] : terms) {
      a += alpha;
      b += alpha * v;
      c += alpha * v * v;
    }
    const double disc = b * b - a * c;
    if (disc >= 0.0) {
      const double u = (b + std::sqrt(disc)) / a;
      if (u >= terms.back().second) return u;
    }
    terms.pop_back();
  }
  return INFINITY;
}

}  // namespace

ScalarGrid Metric::distance_field(Vec2 y, const GridSpec& grid) const {
  return distance_field(std::vector<Vec2>{y}, std::vector<double>{0.0}, grid);
}

ScalarGrid Metric::distance_field(const std::vector<Vec2>& ys, const std::vector<double>& offsets,
                                  const GridSpec& grid, double band) const {
  if (ys.size() != offsets.size()) {
    fail(ErrorCode::kInvalidArgument, "one offset per source is required");
  }
  const int n = grid.size();
  const double h = grid.h;
  ScalarGrid out(grid, INFINITY);
  std::vector<char> state(n, kInactive);
  std::vector<double> kc(n, 0.0);
  const Box& vb = weight_.valid_box();
  for (int idx = 0; idx < n; ++idx) {
    const Vec2 c = grid.center(idx);
    if (vb.contains(c) && domain_.signed_distance_estimate(c) < (band > 0.0 ? band : 4.0 * h)) {
      state[idx] = kFar;
      kc[idx] = weight_.value(c);
    }
  }

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  auto& u = out.values;
  // Exact straight-line values near each source.
  for (std::size_t s = 0; s < ys.size(); ++s) {
    const Vec2 y = ys[s];
    const int cx = grid.cell_x(y.x), cy = grid.cell_y(y.y);
    for (int j = cy - 4; j <= cy + 4; ++j) {
      for (int i = cx - 4; i <= cx + 4; ++i) {
        if (!grid.in_range(i, j)) continue;
        const int idx = grid.index(i, j);
        if (state[idx] == kInactive) continue;
        const Vec2 c = grid.center(idx);
        const double r = geolgp::distance(c, y);
        if (r > 3.0 * h) continue;
        const double ky = vb.contains(y) ? weight_.value(y) : kc[idx];
        const double v = offsets[s] + r * (ky + 4.0 * weight_.value(0.5 * (c + y)) + kc[idx]) / 6.0;
        if (v < u[idx]) {
          u[idx] = v;
          state[idx] = kTrial;
          heap.push({v, idx});
        }
      }
    }
  }

  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  auto known = [&](int i, int j) {
    return grid.in_range(i, j) && state[grid.index(i, j)] == kKnown;
  };
  while (!heap.empty()) {
    const auto [v, idx] = heap.top();
    heap.pop();
    if (state[idx] == kKnown || v > u[idx]) continue;
    state[idx] = kKnown;
    const int i0 = idx % grid.nx, j0 = idx / grid.nx;
    for (int d = 0; d < 4; ++d) {
      const int i = i0 + di[d], j = j0 + dj[d];
      if (!grid.in_range(i, j)) continue;
      const int nb = grid.index(i, j);
      if (state[nb] == kKnown || state[nb] == kInactive) continue;
      std::vector<std::pair<double, double>> terms;
      for (int axis = 0; axis < 2; ++axis) {
        double best = INFINITY, alpha = 0.0, c = 0.0;
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          const int i1 = axis == 0 ? i + sgn : i, j1 = axis == 0 ? j : j + sgn;
          if (!known(i1, j1)) continue;
          const double u1 = u[grid.index(i1, j1)];
          const int i2 = axis == 0 ? i + 2 * sgn : i, j2 = axis == 0 ? j : j + 2 * sgn;
          double a1 = 1.0 / (h * h), c1 = u1;
          if (known(i2, j2)) {
            const double u2 = u[grid.index(i2, j2)];
            if (u2 <= u1) {
              a1 = 9.0 / (4.0 * h * h);
              c1 = (4.0 * u1 - u2) / 3.0;
            }
          }
          if (u1 < best) {
            best = u1;
            alpha = a1;
            c = c1;
          }
        }
        if (std::isfinite(best)) terms.push_back({alpha, c});
      }
      if (terms.empty()) continue;
      const double cand = solve_upwind(std::move(terms), kc[nb] * kc[nb]);
      if (cand < u[nb]) {
        u[nb] = cand;
        state[nb] = kTrial;
        heap.push({cand, nb});
      }
    }
  }
  return out;
}

}  // namespace geolgp
