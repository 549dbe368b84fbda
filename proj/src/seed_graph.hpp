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

#ifndef GEOLGP_SRC_SEED_GRAPH_HPP_
#define GEOLGP_SRC_SEED_GRAPH_HPP_

#include <vector>

#include "geolgp/domain.hpp"
#include "geolgp/geometry.hpp"
#include "geolgp/weight.hpp"

namespace geolgp {

// Coarse lattice graph with a 16-neighbour stencil; shortest paths on it
// seed the shooting method with an initial angle and a length estimate.
class SeedGraph {
 public:
  SeedGraph(const ConformalWeight& weight, const DomainBoundary& domain, int cells);

  struct Run {
    std::vector<double> dist;
    std::vector<int> pred;
  };
  struct Path {
    double direction = 0.0;
    double length = 0.0;
  };

  Run run(Vec2 x) const;
  Path path(const Run& run, Vec2 x, Vec2 y) const;

 private:
  Vec2 node(int idx) const { return {x0_ + (idx % nx_) * h_, y0_ + (idx / nx_) * h_}; }
  double link(Vec2 a, Vec2 b) const;
  std::vector<int> near(Vec2 p) const;

  ConformalWeight weight_;
  int nx_ = 0;
  int ny_ = 0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  double h_ = 0.0;
  std::vector<char> allowed_;
  std::vector<double> edge_;  // 16 per node, +inf when absent
};

}  // namespace geolgp

#endif  // GEOLGP_SRC_SEED_GRAPH_HPP_
