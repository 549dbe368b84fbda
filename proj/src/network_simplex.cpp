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

// Primal network simplex for the balanced transportation problem.

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "geolgp/transport.hpp"

namespace geolgp {
namespace {

class NetworkSimplex {
 public:
  NetworkSimplex(const std::vector<double>& supply, const std::vector<double>& demand,
                 const CostMatrix& cost)
      : m_(static_cast<int>(supply.size())),
        n_(static_cast<int>(demand.size())),
        root_(m_ + n_),
        nodes_(m_ + n_ + 1),
        real_arcs_(m_ * n_) {
    const int arcs = real_arcs_ + m_ + n_;
    tail_.resize(arcs);
    head_.resize(arcs);
    cost_.resize(arcs);
    flow_.assign(arcs, 0.0);
    in_tree_.assign(arcs, 0);
    const double cmax = cost.max_entry();
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const int a = i * n_ + j;
        tail_[a] = i;
        head_[a] = m_ + j;
        cost_[a] = cost.at(i, j);
      }
    }
    const double big = (cmax + 1.0) * nodes_;
    for (int v = 0; v < m_ + n_; ++v) {
      const int a = real_arcs_ + v;
      cost_[a] = big;
      if (v < m_) {
        tail_[a] = v;
        head_[a] = root_;
        flow_[a] = supply[v];
      } else {
        tail_[a] = root_;
        head_[a] = v;
        flow_[a] = demand[v - m_];
      }
      in_tree_[a] = 1;
      tree_.push_back(a);
    }
    eps_ = 1e-11 * (cmax + 1.0);
    parent_.resize(nodes_);
    pred_.resize(nodes_);
    up_.resize(nodes_);
    depth_.resize(nodes_);
    pi_.resize(nodes_);
    rebuild();
  }

  void run() {
    const long max_pivots = 50L * (static_cast<long>(tail_.size()) + 100);
    for (long it = 0; it < max_pivots; ++it) {
      const int e = entering();
      if (e < 0) return;
      pivot(e);
    }
    fail(ErrorCode::kNoConvergence, "network simplex exceeded the pivot limit");
  }

  double flow(int i, int j) const { return flow_[i * n_ + j]; }
  double artificial_flow() const {
    double acc = 0.0;
    for (int v = 0; v < m_ + n_; ++v) acc += flow_[real_arcs_ + v];
    return acc;
  }
  double potential(int v) const { return pi_[v]; }

 private:
  double reduced(int a) const { return cost_[a] + pi_[tail_[a]] - pi_[head_[a]]; }

  int entering() const {
    int best = -1;
    double best_rc = -eps_;
    const int arcs = static_cast<int>(tail_.size());
    for (int a = 0; a < arcs; ++a) {
      if (in_tree_[a]) continue;
      const double rc = reduced(a);
      if (rc < best_rc) {
        best_rc = rc;
        best = a;
      }
    }
    return best;
  }

  void rebuild() {
    std::vector<std::vector<int>> adj(nodes_);
    for (int a : tree_) {
      adj[tail_[a]].push_back(a);
      adj[head_[a]].push_back(a);
    }
    std::vector<char> seen(nodes_, 0);
    std::queue<int> q;
    q.push(root_);
    seen[root_] = 1;
    parent_[root_] = -1;
    pred_[root_] = -1;
    depth_[root_] = 0;
    pi_[root_] = 0.0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int a : adj[v]) {
        const int w = tail_[a] == v ? head_[a] : tail_[a];
        if (seen[w]) continue;
        seen[w] = 1;
        parent_[w] = v;
        pred_[w] = a;
        up_[w] = tail_[a] == w;
        depth_[w] = depth_[v] + 1;
        pi_[w] = up_[w] ? pi_[v] - cost_[a] : pi_[v] + cost_[a];
        q.push(w);
      }
    }
  }

  void pivot(int e) {
    const int u = tail_[e], v = head_[e];
    // Climb to the join, recording both sides.
    std::vector<int> from_u, from_v;
    int a = u, b = v;
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        from_u.push_back(a);
        a = parent_[a];
      } else {
        from_v.push_back(b);
        b = parent_[b];
      }
    }
    // Cycle orientation: join -> u, then e, then v -> join. Keep the last
    // blocking arc in that order.
    double delta = INFINITY;
    int leave = -1;
    for (auto it = from_u.rbegin(); it != from_u.rend(); ++it) {
      const int w = *it;
      if (up_[w] && flow_[pred_[w]] <= delta) {
        delta = flow_[pred_[w]];
        leave = pred_[w];
      }
    }
    for (int w : from_v) {
      if (!up_[w] && flow_[pred_[w]] <= delta) {
        delta = flow_[pred_[w]];
        leave = pred_[w];
      }
    }
    if (leave < 0) fail(ErrorCode::kNoConvergence, "unbounded transportation problem");
    for (int w : from_u) flow_[pred_[w]] += up_[w] ? -delta : delta;
    for (int w : from_v) flow_[pred_[w]] += up_[w] ? delta : -delta;
    flow_[e] += delta;
    if (flow_[leave] < 0.0) flow_[leave] = 0.0;
    in_tree_[leave] = 0;
    in_tree_[e] = 1;
    *std::find(tree_.begin(), tree_.end(), leave) = e;
    rebuild();
  }

  int m_, n_, root_, nodes_, real_arcs_;
  std::vector<int> tail_, head_;
  std::vector<double> cost_, flow_;
  std::vector<char> in_tree_;
  std::vector<int> tree_;
  std::vector<int> parent_, pred_, depth_;
  std::vector<char> up_;
  std::vector<double> pi_;
  double eps_ = 0.0;
};

}  // namespace

TransportPlan solve_lp(const std::vector<double>& source_mass,
                       const std::vector<double>& target_mass, const CostMatrix& cost) {
  if (static_cast<int>(source_mass.size()) != cost.rows ||
      static_cast<int>(target_mass.size()) != cost.cols) {
    fail(ErrorCode::kInvalidArgument, "cost matrix shape does not match the atoms");
  }
  double ms = 0.0, mt = 0.0;
  for (double a : source_mass) {
    if (!(a > 0.0)) fail(ErrorCode::kInvalidArgument, "source masses must be positive");
    ms += a;
  }
  for (double b : target_mass) {
    if (!(b > 0.0)) fail(ErrorCode::kInvalidArgument, "target masses must be positive");
    mt += b;
  }
  if (std::abs(ms - mt) > 1e-9 * std::max(1.0, ms)) {
    fail(ErrorCode::kUnbalanced, "source and target masses differ by " + std::to_string(ms - mt));
  }
  std::vector<double> demand = target_mass;
  for (double& b : demand) b *= ms / mt;
  for (double c : cost.entries) {
    if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorCode::kInvalidArgument, "costs must be finite and nonnegative");
  }

  NetworkSimplex ns(source_mass, demand, cost);
  ns.run();
  if (ns.artificial_flow() > 1e-9 * ms) {
    fail(ErrorCode::kUnbalanced, "transportation problem is infeasible");
  }
  TransportPlan plan;
  for (int i = 0; i < cost.rows; ++i) {
    for (int j = 0; j < cost.cols; ++j) {
      const double f = ns.flow(i, j);
      if (f > 1e-14 * ms) {
        Flow fl;
        fl.source = i;
        fl.target = j;
        fl.mass = f;
        fl.cost = cost.at(i, j);
        plan.flows.push_back(fl);
        plan.total_cost += f * fl.cost;
      }
    }
  }
  plan.psi_source.resize(cost.rows);
  plan.psi_target.resize(cost.cols);
  for (int i = 0; i < cost.rows; ++i) plan.psi_source[i] = -ns.potential(i);
  for (int j = 0; j < cost.cols; ++j) plan.psi_target[j] = -ns.potential(cost.rows + j);
  const double shift = *std::min_element(plan.psi_target.begin(), plan.psi_target.end());
  for (double& p : plan.psi_source) p -= shift;
  for (double& p : plan.psi_target) p -= shift;
  return plan;
}

}  // namespace geolgp
