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

// Test-side oracles, written independently of the library algorithms.

#ifndef GEOLGP_TESTS_ORACLES_HPP_
#define GEOLGP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "geolgp/geometry.hpp"

namespace oracle {

using geolgp::Vec2;

// Shortest paths on a lattice with every step (a, b), |a|, |b| <= 5,
// gcd(a, b) = 1, over nodes inside the region. Edge cost is the Simpson
// rule for k along the step.
class LatticeDijkstra {
 public:
  LatticeDijkstra(std::function<double(Vec2)> k, std::function<bool(Vec2)> inside, Vec2 lo,
                  Vec2 hi, double h)
      : k_(std::move(k)), lo_(lo), h_(h) {
    nx_ = static_cast<int>(std::ceil((hi.x - lo.x) / h)) + 1;
    ny_ = static_cast<int>(std::ceil((hi.y - lo.y) / h)) + 1;
    inside_.resize(static_cast<std::size_t>(nx_) * ny_);
    kval_.resize(inside_.size());
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) {
        const Vec2 p = node(i, j);
        inside_[id(i, j)] = inside(p);
        if (inside_[id(i, j)]) kval_[id(i, j)] = k_(p);
      }
    }
    for (int a = -5; a <= 5; ++a) {
      for (int b = -5; b <= 5; ++b) {
        if ((a || b) && std::gcd(std::abs(a), std::abs(b)) == 1) steps_.push_back({a, b});
      }
    }
  }

  Vec2 node(int i, int j) const { return {lo_.x + i * h_, lo_.y + j * h_}; }

  // Distances from x; x is joined to every inside node within 2.5 h by a
  // straight edge.
  void run(Vec2 x) {
    dist_.assign(inside_.size(), std::numeric_limits<double>::infinity());
    pred_.assign(inside_.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> q;
    source_ = x;
    for (int c : near(x)) {
      const Vec2 p = node(c % nx_, c / nx_);
      const double d = segment_cost(x, p);
      if (d < dist_[c]) {
        dist_[c] = d;
        q.push({d, c});
      }
    }
    while (!q.empty()) {
      const auto [d, c] = q.top();
      q.pop();
      if (d > dist_[c]) continue;
      const int i = c % nx_, j = c / nx_;
      for (const auto& [a, b] : steps_) {
        const int ii = i + a, jj = j + b;
        if (ii < 0 || jj < 0 || ii >= nx_ || jj >= ny_) continue;
        const int e = id(ii, jj);
        if (!inside_[e]) continue;
        const Vec2 pm = {lo_.x + (i + 0.5 * a) * h_, lo_.y + (j + 0.5 * b) * h_};
        const double w = h_ * std::hypot(a, b) * (kval_[c] + 4 * k_(pm) + kval_[e]) / 6;
        if (d + w < dist_[e]) {
          dist_[e] = d + w;
          pred_[e] = c;
          q.push({d + w, e});
        }
      }
    }
  }

  double distance_to(Vec2 y) const {
    double best = std::numeric_limits<double>::infinity();
    for (int c : near(y)) best = std::min(best, dist_[c] + segment_cost(node(c % nx_, c / nx_), y));
    return best;
  }

  std::vector<Vec2> path_to(Vec2 y) const {
    int best_c = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int c : near(y)) {
      const double d = dist_[c] + segment_cost(node(c % nx_, c / nx_), y);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    std::vector<Vec2> path{y};
    for (int c = best_c; c >= 0; c = pred_[c]) path.push_back(node(c % nx_, c / nx_));
    path.push_back(source_);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  int id(int i, int j) const { return j * nx_ + i; }

  std::vector<int> near(Vec2 x) const {
    std::vector<int> out;
    const int ci = static_cast<int>(std::round((x.x - lo_.x) / h_));
    const int cj = static_cast<int>(std::round((x.y - lo_.y) / h_));
    for (int j = cj - 3; j <= cj + 3; ++j) {
      for (int i = ci - 3; i <= ci + 3; ++i) {
        if (i < 0 || j < 0 || i >= nx_ || j >= ny_ || !inside_[id(i, j)]) continue;
        if (geolgp::distance(node(i, j), x) <= 2.5 * h_) out.push_back(id(i, j));
      }
    }
    return out;
  }

  double segment_cost(Vec2 a, Vec2 b) const {
    return geolgp::distance(a, b) * (k_(a) + 4 * k_(0.5 * (a + b)) + k_(b)) / 6;
  }

  std::function<double(Vec2)> k_;
  Vec2 lo_;
  double h_;
  int nx_ = 0, ny_ = 0;
  std::vector<char> inside_;
  std::vector<double> kval_;
  std::vector<std::pair<int, int>> steps_;
  std::vector<double> dist_;
  std::vector<int> pred_;
  Vec2 source_;
};

// One-sided Hausdorff distance from the vertices of a to the polyline b.
inline double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double worst = 0.0;
  for (Vec2 p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + 1 < b.size(); ++s) {
      best = std::min(best, geolgp::segment_distance(p, b[s], b[s + 1]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

// Cumulative mass of a density on [lo, hi] by the composite trapezoid rule
// on m cells.
struct NumericCdf {
  double lo, hi;
  std::vector<double> cum;

  NumericCdf(const std::function<double(double)>& density, double lo_, double hi_, int m)
      : lo(lo_), hi(hi_), cum(m + 1, 0.0) {
    const double d = (hi - lo) / m;
    for (int i = 0; i < m; ++i) {
      cum[i + 1] = cum[i] + 0.5 * d * (density(lo + i * d) + density(lo + (i + 1) * d));
    }
  }
  double total() const { return cum.back(); }
  double at(double t) const {
    if (t <= lo) return 0.0;
    if (t >= hi) return total();
    const double d = (hi - lo) / (cum.size() - 1);
    const double f = (t - lo) / d;
    const std::size_t i = std::min(static_cast<std::size_t>(f), cum.size() - 2);
    return cum[i] + (f - i) * (cum[i + 1] - cum[i]);
  }
  // Smallest t with at(t) >= mass, by bisection.
  double quantile(double mass) const {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      (at(m) < mass ? a : b) = m;
    }
    return 0.5 * (a + b);
  }
};

// Wasserstein-1 distance in the parameter between the density on [lo, hi]
// and atoms (theta, mass) lying in [lo, hi]: integral of |F - G|.
inline double w1_to_atoms(const NumericCdf& f,
                          const std::vector<std::pair<double, double>>& atoms, int m = 20000) {
  std::vector<std::pair<double, double>> sorted = atoms;
  std::sort(sorted.begin(), sorted.end());
  const double d = (f.hi - f.lo) / m;
  double acc = 0.0;
  std::size_t k = 0;
  double g = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = f.lo + (i + 0.5) * d;
    while (k < sorted.size() && sorted[k].first <= t) g += sorted[k++].second;
    acc += std::abs(f.at(t) - g) * d;
  }
  return acc;
}

// Minimum-cost transport by successive shortest paths (Bellman-Ford on the
// residual network). Independent of the network simplex.
inline double min_cost_flow(const std::vector<double>& supply, const std::vector<double>& demand,
                            const std::vector<std::vector<double>>& cost) {
  const int ns = static_cast<int>(supply.size()), nt = static_cast<int>(demand.size());
  const int n = ns + nt + 2, src = ns + nt, snk = ns + nt + 1;
  struct Arc {
    int to, rev;
    double cap, cost;
  };
  std::vector<std::vector<Arc>> g(n);
  auto add = [&](int a, int b, double cap, double c) {
    g[a].push_back({b, static_cast<int>(g[b].size()), cap, c});
    g[b].push_back({a, static_cast<int>(g[a].size()) - 1, 0.0, -c});
  };
  for (int i = 0; i < ns; ++i) add(src, i, supply[i], 0.0);
  for (int j = 0; j < nt; ++j) add(ns + j, snk, demand[j], 0.0);
  double total_cap = 0.0;
  for (double s : supply) total_cap += s;
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) add(i, ns + j, total_cap, cost[i][j]);
  }
  double total = 0.0;
  const double eps = 1e-13 * std::max(1.0, total_cap);
  while (true) {
    std::vector<double> d(n, std::numeric_limits<double>::infinity());
    std::vector<int> pv(n, -1), pe(n, -1);
    d[src] = 0.0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int v = 0; v < n; ++v) {
        if (!std::isfinite(d[v])) continue;
        for (std::size_t e = 0; e < g[v].size(); ++e) {
          const Arc& a = g[v][e];
          if (a.cap > eps && d[v] + a.cost < d[a.to] - 1e-15) {
            d[a.to] = d[v] + a.cost;
            pv[a.to] = v;
            pe[a.to] = static_cast<int>(e);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (!std::isfinite(d[snk])) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = snk; v != src; v = pv[v]) push = std::min(push, g[pv[v]][pe[v]].cap);
    for (int v = snk; v != src; v = pv[v]) {
      Arc& a = g[pv[v]][pe[v]];
      a.cap -= push;
      g[v][a.rev].cap += push;
    }
    total += push * d[snk];
  }
  return total;
}

// Brute force over permutations: minimum of sum cost[i][perm[i]] for square
// unit-mass assignment.
inline double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
  std::vector<int> perm(cost.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) c += cost[i][perm[i]];
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle

#endif  // GEOLGP_TESTS_ORACLES_HPP_
