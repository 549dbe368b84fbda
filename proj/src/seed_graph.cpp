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

#include "seed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <utility>

namespace geolgp {
namespace {

constexpr int kStencil[16][2] = {{1, 0},  {0, 1},  {-1, 0}, {0, -1},  {1, 1},   {-1, 1},
                                 {-1, -1}, {1, -1}, {2, 1},  {1, 2},   {-1, 2},  {-2, 1},
                                 {-2, -1}, {-1, -2}, {1, -2}, {2, -1}};
constexpr double kLinkRadius = 2.5;

}  // namespace

SeedGraph::SeedGraph(const ConformalWeight& weight, const DomainBoundary& domain, int cells)
    : weight_(weight) {
  const Box b = domain.bbox();
  h_ = std::max(b.width(), b.height()) / std::max(cells, 4);
  x0_ = b.lo.x - 2.0 * h_;
  y0_ = b.lo.y - 2.0 * h_;
  nx_ = static_cast<int>(std::ceil(b.width() / h_)) + 5;
  ny_ = static_cast<int>(std::ceil(b.height() / h_)) + 5;
  const int n = nx_ * ny_;
  allowed_.assign(n, 0);
  const Box& vb = weight_.valid_box();
  for (int i = 0; i < n; ++i) {
    const Vec2 p = node(i);
    allowed_[i] = vb.contains(p) && domain.signed_distance_estimate(p) <= 0.5 * h_;
  }
  edge_.assign(static_cast<std::size_t>(n) * 16, INFINITY);
  for (int i = 0; i < n; ++i) {
    if (!allowed_[i]) continue;
    const int ix = i % nx_, iy = i / nx_;
    for (int d = 0; d < 16; ++d) {
      const int jx = ix + kStencil[d][0], jy = iy + kStencil[d][1];
      if (jx < 0 || jy < 0 || jx >= nx_ || jy >= ny_) continue;
      const int j = jy * nx_ + jx;
      if (!allowed_[j]) continue;
      edge_[static_cast<std::size_t>(i) * 16 + d] = link(node(i), node(j));
    }
  }
}

double SeedGraph::link(Vec2 a, Vec2 b) const {
  return distance(a, b) *
         (weight_.value(a) + 4.0 * weight_.value(0.5 * (a + b)) + weight_.value(b)) / 6.0;
}

std::vector<int> SeedGraph::near(Vec2 p) const {
  std::vector<int> out;
  const int r = static_cast<int>(std::ceil(kLinkRadius));
  const int cx = static_cast<int>(std::floor((p.x - x0_) / h_));
  const int cy = static_cast<int>(std::floor((p.y - y0_) / h_));
  for (int jy = cy - r; jy <= cy + r + 1; ++jy) {
    for (int jx = cx - r; jx <= cx + r + 1; ++jx) {
      if (jx < 0 || jy < 0 || jx >= nx_ || jy >= ny_) continue;
      const int j = jy * nx_ + jx;
      if (allowed_[j] && distance(node(j), p) <= kLinkRadius * h_) out.push_back(j);
    }
  }
  return out;
}

SeedGraph::Run SeedGraph::run(Vec2 x) const {
  Run r;
  const int n = nx_ * ny_;
  r.dist.assign(n, INFINITY);
  r.pred.assign(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int j : near(x)) {
    r.dist[j] = link(x, node(j));
    heap.push({r.dist[j], j});
  }
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (d > r.dist[i]) continue;
    const int ix = i % nx_, iy = i / nx_;
    for (int s = 0; s < 16; ++s) {
      const double w = edge_[static_cast<std::size_t>(i) * 16 + s];
      if (!std::isfinite(w)) continue;
      const int j = (iy + kStencil[s][1]) * nx_ + ix + kStencil[s][0];
      if (d + w < r.dist[j]) {
        r.dist[j] = d + w;
        r.pred[j] = i;
        heap.push({r.dist[j], j});
      }
    }
  }
  return r;
}

SeedGraph::Path SeedGraph::path(const Run& run, Vec2 x, Vec2 y) const {
  Path p;
  p.direction = std::atan2(y.y - x.y, y.x - x.x);
  p.length = distance(x, y) <= kLinkRadius * h_ ? link(x, y) : INFINITY;
  int best = -1;
  for (int j : near(y)) {
    const double total = run.dist[j] + link(node(j), y);
    if (total < p.length) {
      p.length = total;
      best = j;
    }
  }
  if (best < 0) return p;
  std::vector<int> chain;
  for (int j = best; j >= 0; j = run.pred[j]) chain.push_back(j);
  std::reverse(chain.begin(), chain.end());
  Vec2 aim = node(chain.back());
  for (int j : chain) {
    if (distance(node(j), x) >= 3.0 * h_) {
      aim = node(j);
      break;
    }
  }
  if (distance(aim, x) < 0.5 * h_) aim = y;
  p.direction = std::atan2(aim.y - x.y, aim.x - x.x);
  return p;
}

}  // namespace geolgp
